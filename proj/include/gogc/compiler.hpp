#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gogc/diagnostic.hpp"
#include "gogc/scene.hpp"
#include "gogc/spec_tree.hpp"

namespace gogc {

// Where `values` file names are looked up: in-memory files first, then the
// base directory. Tables already in `registry` can be referenced by name
// without a data block entry.
struct DataSources {
  std::filesystem::path base_dir = ".";
  std::map<std::string, std::string> files;
  DataRegistry registry;

  std::optional<std::string> read(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Scan

struct ScanResult {
  Json spec;  // "colour" keys renamed to "color"
  std::vector<Diagnostic> diagnostics;
};

ScanResult scan(const Json& raw);
// Malformed JSON becomes a single scan error at path "".
ScanResult scan_text(std::string_view text);

// Legal values of the enumerated keys, in the order error messages list them.
const std::vector<std::string>& legal_scale_types();
const std::vector<std::string>& legal_axes_types();
const std::vector<std::string>& legal_geom_types();

// ---------------------------------------------------------------------------
// Parse

// Expects a document that passed scan.
SpecTree parse(const Json& scanned);

// ---------------------------------------------------------------------------
// Link

enum class NodeKind { Data, Transform, Scale, Frame, Axis, Geom, Guide };

std::string_view to_string(NodeKind k);

struct LinkNode {
  std::string id;  // data:crimea, transform:0, scale:xscale, frame, axis:0, geom:0, guide:0
  NodeKind kind = NodeKind::Data;
  std::size_t index = 0;  // declaration index inside its block
  std::string path;
};

struct LinkGraph {
  std::vector<LinkNode> nodes;
  // (dependent, provider) pairs of node indices.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::optional<std::size_t> find(std::string_view id) const;
  // Kahn's algorithm, ready nodes taken by (stage, declaration index).
  // Throws IllegalLink on a cycle.
  std::vector<std::size_t> execution_order() const;
  bool is_topological(const std::vector<std::size_t>& order) const;
};

// Resolves names, checks that each link is acceptable and appends
// diagnostics. Parallel specs without geoms get a default line geom, which
// is why the tree is taken by reference.
LinkGraph link(SpecTree& tree, const DataRegistry& preloaded, std::vector<Diagnostic>& diagnostics);

// ---------------------------------------------------------------------------
// Assemble

using RecordFractions = std::vector<std::optional<std::vector<double>>>;

struct AssembleResult {
  SceneGraph scene;
  std::vector<std::string> execution_order;  // node ids
  RecordFractions fractions;                  // parallel kinds only
  DataRegistry registry;                      // after transforms
};

AssembleResult assemble(const LinkGraph& graph, const SpecTree& tree, const DataSources& sources,
                        std::vector<Diagnostic>& diagnostics);

// ---------------------------------------------------------------------------

struct PhaseSummary {
  Phase phase = Phase::Scan;
  Json summary;
};

struct CompileResult {
  SceneGraph scene;
  std::vector<Diagnostic> diagnostics;
  std::vector<PhaseSummary> trace;
  std::vector<std::string> execution_order;
  RecordFractions fractions;
  std::optional<SpecTree> tree;
  std::optional<LinkGraph> graph;

  bool ok() const { return !has_errors(diagnostics); }
};

// scan, parse, link, assemble; stops after the first phase with an error.
CompileResult compile(std::string_view spec_text, const DataSources& sources);
CompileResult compile_json(const Json& spec, const DataSources& sources);

}  // namespace gogc
