#include "gogc/compiler.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gogc/error.hpp"

namespace gogc {

std::optional<std::string> DataSources::read(const std::string& name) const {
  if (auto it = files.find(name); it != files.end()) return it->second;
  std::filesystem::path p(name);
  if (p.is_relative()) p = base_dir / p;
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::size_t count(const std::vector<Diagnostic>& diags, Severity s, Phase p) {
  std::size_t n = 0;
  for (const auto& d : diags) n += d.severity == s && d.phase == p;
  return n;
}

Json phase_counts(const std::vector<Diagnostic>& diags, Phase p) {
  Json j = Json::object();
  j["errors"] = count(diags, Severity::Error, p);
  j["warnings"] = count(diags, Severity::Warning, p);
  return j;
}

CompileResult run_phases(ScanResult scanned, const DataSources& sources);

std::vector<std::string> split_pointer(const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 1;
  while (i <= path.size() && !path.empty()) {
    std::size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    std::string seg;
    for (std::size_t k = i; k < j; ++k) {
      if (path[k] == '~' && k + 1 < j) {
        seg += path[k + 1] == '1' ? '/' : '~';
        ++k;
      } else {
        seg += path[k];
      }
    }
    out.push_back(std::move(seg));
    i = j + 1;
  }
  return out;
}

// Scan renamed "colour" to "color"; point diagnostics back at what the user wrote.
std::string restore_spelling(const Json& raw, const std::string& path) {
  const Json* node = &raw;
  std::string out;
  for (const auto& seg : split_pointer(path)) {
    std::string key = seg;
    if (node && node->is_object()) {
      if (!node->contains(key) && key == "color" && node->contains("colour")) key = "colour";
      node = node->contains(key) ? &node->at(key) : nullptr;
    } else if (node && node->is_array()) {
      const std::size_t idx = std::strtoul(key.c_str(), nullptr, 10);
      node = idx < node->size() ? &(*node)[idx] : nullptr;
    } else {
      node = nullptr;
    }
    out = pointer_child(out, key);
  }
  return out;
}

CompileResult run_phases(const Json& raw, ScanResult scanned, const DataSources& sources) {
  CompileResult out = run_phases(std::move(scanned), sources);
  for (auto& d : out.diagnostics) d.path = restore_spelling(raw, d.path);
  return out;
}

CompileResult run_phases(ScanResult scanned, const DataSources& sources) {
  CompileResult out;
  out.diagnostics = std::move(scanned.diagnostics);
  {
    Json s = Json::object();
    s["phase"] = "scan";
    s["blocks"] = Json::array();
    if (scanned.spec.is_object()) {
      for (auto it = scanned.spec.begin(); it != scanned.spec.end(); ++it) s["blocks"].push_back(it.key());
    }
    s["diagnostics"] = phase_counts(out.diagnostics, Phase::Scan);
    out.trace.push_back({Phase::Scan, s});
  }
  if (has_errors(out.diagnostics)) return out;

  SpecTree tree = parse(scanned.spec);
  {
    Json s = Json::object();
    s["phase"] = "parse";
    Json nodes = Json::object();
    nodes["data"] = tree.data.size();
    nodes["transform"] = tree.transforms.size();
    nodes["scales"] = tree.scales.size();
    nodes["axes"] = tree.axes.axes.size();
    nodes["geom"] = tree.geoms.size();
    nodes["guides"] = tree.guides.size();
    s["nodes"] = nodes;
    s["coords"] = to_string(tree.axes.kind);
    s["defaults_filled"] = tree.defaults.size();
    Json filled = Json::array();
    for (const auto& d : tree.defaults) {
      Json e = Json::object();
      e["path"] = d.path;
      e["value"] = d.value;
      filled.push_back(e);
    }
    s["defaults"] = filled;
    out.trace.push_back({Phase::Parse, s});
  }

  LinkGraph graph = link(tree, sources.registry, out.diagnostics);
  {
    Json s = Json::object();
    s["phase"] = "link";
    s["nodes"] = graph.nodes.size();
    s["edges"] = graph.edges.size();
    Json edges = Json::array();
    for (const auto& [dep, prov] : graph.edges) edges.push_back(Json::array({graph.nodes[dep].id, graph.nodes[prov].id}));
    s["edge_list"] = edges;
    s["diagnostics"] = phase_counts(out.diagnostics, Phase::Link);
    out.trace.push_back({Phase::Link, s});
  }
  out.tree = tree;
  out.graph = graph;
  if (has_errors(out.diagnostics)) return out;

  AssembleResult assembled = assemble(graph, tree, sources, out.diagnostics);
  out.scene = std::move(assembled.scene);
  out.execution_order = std::move(assembled.execution_order);
  out.fractions = std::move(assembled.fractions);
  {
    Json s = Json::object();
    s["phase"] = "assemble";
    s["execution_order"] = out.execution_order;
    s["commands"] = out.scene.commands.size();
    s["diagnostics"] = phase_counts(out.diagnostics, Phase::Assemble);
    out.trace.push_back({Phase::Assemble, s});
  }
  return out;
}

}  // namespace

CompileResult compile(std::string_view spec_text, const DataSources& sources) {
  Json raw;
  try {
    raw = Json::parse(spec_text.begin(), spec_text.end());
  } catch (const nlohmann::json::parse_error&) {
    return run_phases(scan_text(spec_text), sources);
  }
  return run_phases(raw, scan(raw), sources);
}

CompileResult compile_json(const Json& spec, const DataSources& sources) { return run_phases(spec, scan(spec), sources); }

}  // namespace gogc
