#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gogc/compiler.hpp"
#include "gogc/datastore.hpp"
#include "gogc/svg.hpp"

namespace testing {

namespace fs = std::filesystem;

fs::path source_dir();
fs::path gallery_dir();
fs::path conformance_dir();
std::string read_file(const fs::path& p);
void write_file(const fs::path& p, const std::string& bytes);

// Gallery specs in name order (gallery/*.json).
std::vector<fs::path> gallery_specs();

struct Compiled {
  gogc::CompileResult result;
  std::string svg;  // empty when compilation failed
};
Compiled compile_text(const std::string& text, const fs::path& data_dir);
Compiled compile_file(const fs::path& spec, const fs::path& data_dir);
Compiled compile_doc(const gogc::Json& doc, const fs::path& data_dir);

std::string diagnostics_text(const std::vector<gogc::Diagnostic>& diags);

// Writes every filled default back into the document at its path.
gogc::Json with_explicit_defaults(const gogc::Json& doc, const std::vector<gogc::DefaultRecord>& defaults);
bool pointer_resolves(const gogc::Json& doc, const std::string& pointer);

// Seeded generators.
using Rng = std::mt19937_64;
double uniform(Rng& rng, double lo, double hi);
std::size_t pick(Rng& rng, std::size_t n);  // [0, n)
gogc::DataTable random_keyed_table(Rng& rng, const std::string& name, const std::string& key,
                                   const std::vector<std::string>& fields, std::size_t rows, int key_space);

// Brute-force oracles.
gogc::DataTable oracle_join(const gogc::DataTable& left, const gogc::DataTable& right, const std::string& key,
                            gogc::JoinSide side);
gogc::DataTable oracle_cross(const gogc::DataTable& left, const gogc::DataTable& right);
// Sorts a copy and interpolates at h = (n - 1) p.
double oracle_quantile(std::vector<double> sample, double p);
// Counts thresholds that v has reached.
std::size_t oracle_bucket(const std::vector<double>& sample, std::size_t m, double v);

// Random valid specs over in-memory data for the link-order property.
gogc::Json random_spec(Rng& rng, gogc::DataSources& sources);
// One to three random edits: wrong kinds, bogus enum values, dropped keys,
// dangling names.
gogc::Json mutate_spec(Rng& rng, gogc::Json doc);

}  // namespace testing
