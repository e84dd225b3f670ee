#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace testing {

using gogc::DataTable;
using gogc::DataValue;
using gogc::Json;

fs::path source_dir() { return fs::path(GOGC_SOURCE_DIR); }
fs::path gallery_dir() { return source_dir() / "gallery"; }
fs::path conformance_dir() { return source_dir() / "tests" / "conformance"; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::vector<fs::path> gallery_specs() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(gallery_dir())) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Compiled finish(gogc::CompileResult r) {
  Compiled c;
  if (r.ok()) c.svg = gogc::emit_svg(r.scene);
  c.result = std::move(r);
  return c;
}

gogc::DataSources sources_for(const fs::path& data_dir) {
  gogc::DataSources s;
  s.base_dir = data_dir;
  return s;
}

}  // namespace

Compiled compile_text(const std::string& text, const fs::path& data_dir) {
  return finish(gogc::compile(text, sources_for(data_dir)));
}

Compiled compile_file(const fs::path& spec, const fs::path& data_dir) { return compile_text(read_file(spec), data_dir); }

Compiled compile_doc(const Json& doc, const fs::path& data_dir) {
  return finish(gogc::compile_json(doc, sources_for(data_dir)));
}

std::string diagnostics_text(const std::vector<gogc::Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) out += gogc::to_json_line(d) + "\n";
  return out;
}

Json with_explicit_defaults(const Json& doc, const std::vector<gogc::DefaultRecord>& defaults) {
  Json out = doc;
  for (const auto& d : defaults) {
    const Json::json_pointer ptr(d.path);
    if (!out.contains(ptr)) out[ptr] = d.value;
  }
  return out;
}

bool pointer_resolves(const Json& doc, const std::string& pointer) {
  try {
    return doc.contains(Json::json_pointer(pointer));
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

DataTable random_keyed_table(Rng& rng, const std::string& name, const std::string& key,
                             const std::vector<std::string>& fields, std::size_t rows, int key_space) {
  std::vector<std::string> names = {key};
  names.insert(names.end(), fields.begin(), fields.end());
  std::vector<gogc::Row> data;
  for (std::size_t r = 0; r < rows; ++r) {
    gogc::Row row;
    // An occasional null key.
    if (pick(rng, 10) == 0) {
      row.push_back(gogc::null_value());
    } else {
      row.push_back(gogc::number_value(static_cast<double>(pick(rng, static_cast<std::size_t>(key_space)))));
    }
    for (std::size_t f = 0; f < fields.size(); ++f) {
      row.push_back(gogc::number_value(std::round(uniform(rng, -50, 50))));
    }
    data.push_back(std::move(row));
  }
  return DataTable(name, names, std::move(data));
}

DataTable oracle_join(const DataTable& left, const DataTable& right, const std::string& key, gogc::JoinSide side) {
  const DataTable& p = side == gogc::JoinSide::Left ? left : right;
  const DataTable& s = side == gogc::JoinSide::Left ? right : left;
  const std::size_t pk = p.column_index(key);
  const std::size_t sk = s.column_index(key);
  std::vector<gogc::Row> rows;
  for (std::size_t i = 0; i < p.row_count(); ++i) {
    gogc::Row row = p.rows()[i];
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < s.row_count() && !hit; ++j) {
      if (!gogc::is_null(p.at(i, pk)) && p.at(i, pk) == s.at(j, sk)) hit = j;
    }
    for (std::size_t c = 0; c < s.column_count(); ++c) {
      if (c == sk) continue;
      row.push_back(hit ? s.at(*hit, c) : gogc::null_value());
    }
    rows.push_back(std::move(row));
  }
  std::vector<gogc::Column> cols = p.columns();
  for (std::size_t c = 0; c < s.column_count(); ++c) {
    if (c != sk) cols.push_back({"c" + std::to_string(c), s.columns()[c].type});
  }
  return DataTable::with_columns(p.name(), std::move(cols), std::move(rows));
}

DataTable oracle_cross(const DataTable& left, const DataTable& right) {
  std::vector<gogc::Row> rows;
  for (std::size_t i = 0; i < left.row_count(); ++i) {
    for (std::size_t j = 0; j < right.row_count(); ++j) {
      gogc::Row row;
      for (std::size_t c = 0; c < left.column_count(); ++c) row.push_back(left.at(i, c));
      for (std::size_t c = 0; c < right.column_count(); ++c) row.push_back(right.at(j, c));
      rows.push_back(std::move(row));
    }
  }
  std::vector<gogc::Column> cols;
  for (std::size_t c = 0; c < left.column_count() + right.column_count(); ++c) {
    cols.push_back({"c" + std::to_string(c), c < left.column_count() ? left.columns()[c].type
                                                                       : right.columns()[c - left.column_count()].type});
  }
  return DataTable::with_columns(left.name(), std::move(cols), std::move(rows));
}

double oracle_quantile(std::vector<double> sample, double p) {
  std::sort(sample.begin(), sample.end());
  const double h = static_cast<double>(sample.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

std::size_t oracle_bucket(const std::vector<double>& sample, std::size_t m, double v) {
  std::size_t bucket = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (v >= oracle_quantile(sample, static_cast<double>(i) / static_cast<double>(m))) bucket = i;
  }
  return bucket;
}

// Specs are built from a pool of datasets and scales with random geoms,
// transforms and guides, declared in a random order inside each block.
Json random_spec(Rng& rng, gogc::DataSources& sources) {
  Json spec = Json::object();
  const std::size_t n_data = 1 + pick(rng, 3);
  Json data = Json::array();
  std::vector<std::string> datasets;
  for (std::size_t i = 0; i < n_data; ++i) {
    const std::string name = "d" + std::to_string(i);
    Json rows = Json::array();
    const std::size_t n = 3 + pick(rng, 6);
    for (std::size_t r = 0; r < n; ++r) {
      Json row = Json::object();
      row["k"] = std::string(1, static_cast<char>('a' + pick(rng, 4)));
      row["u"] = std::round(uniform(rng, 1, 100));
      row["v"] = std::round(uniform(rng, 1, 100));
      rows.push_back(row);
    }
    if (pick(rng, 2) == 0) {
      // Half of the datasets come from a file.
      std::string csv = "k,u,v\n";
      for (const auto& row : rows) {
        csv += row["k"].get<std::string>() + "," + gogc::format_label(row["u"].get<double>()) + "," +
               gogc::format_label(row["v"].get<double>()) + "\n";
      }
      sources.files[name + ".csv"] = csv;
      data.push_back(Json{{"name", name}, {"values", name + ".csv"}});
    } else {
      data.push_back(Json{{"name", name}, {"values", rows}});
    }
    datasets.push_back(name);
  }
  spec["data"] = data;

  Json transforms = Json::array();
  const std::size_t n_tr = pick(rng, 4);
  for (std::size_t i = 0; i < n_tr; ++i) {
    const std::string in = datasets[pick(rng, datasets.size())];
    const std::string out = "t" + std::to_string(i);
    switch (pick(rng, 3)) {
      case 0: transforms.push_back(Json{{"type", "filter"}, {"data", in}, {"expr", "u > 20"}, {"name", out}}); break;
      case 1:
        transforms.push_back(Json{{"type", "group"}, {"data", in}, {"keys", Json::array({"k"})},
                                  {"aggregates", Json::array({Json{{"field", "u"}, {"stat", "sum"}, {"as", "u"}},
                                                              Json{{"field", "v"}, {"stat", "max"}, {"as", "v"}}})},
                                  {"name", out}});
        break;
      default: {
        const std::string other = datasets[pick(rng, datasets.size())];
        transforms.push_back(Json{{"type", "join"}, {"left", in}, {"right", other}, {"key", "k"}, {"name", out}});
        break;
      }
    }
    datasets.push_back(out);
  }
  spec["transform"] = transforms;

  Json scales = Json::array();
  std::vector<std::pair<std::string, std::string>> numeric;  // scale, field
  const std::size_t n_sc = 2 + pick(rng, 3);
  for (std::size_t i = 0; i < n_sc; ++i) {
    const std::string name = "s" + std::to_string(i);
    const std::string field = pick(rng, 2) == 0 ? "u" : "v";
    Json domain = pick(rng, 2) == 0 ? Json{{"data", datasets[pick(rng, datasets.size())]}, {"field", field}}
                                    : Json::array({0, 100});
    scales.push_back(Json{{"name", name}, {"type", "linear"}, {"range", i % 2 == 0 ? "width" : "height"}, {"domain", domain}});
    numeric.emplace_back(name, field);
  }
  scales.push_back(Json{{"name", "cat"}, {"type", "ordinal"}, {"domain", Json::array({"a", "b", "c", "d"})}});
  std::shuffle(scales.begin(), scales.end(), rng);
  spec["scales"] = scales;

  Json geoms = Json::array();
  const std::size_t n_geom = 1 + pick(rng, 3);
  static const char* kinds[] = {"point", "line", "text", "marks"};
  for (std::size_t i = 0; i < n_geom; ++i) {
    const auto& xs = numeric[pick(rng, numeric.size())];
    const auto& ys = numeric[pick(rng, numeric.size())];
    Json props = Json{{"x", Json{{"scale", xs.first}, {"field", xs.second}}},
                      {"y", Json{{"scale", ys.first}, {"field", ys.second}}}};
    const std::string kind = kinds[pick(rng, 4)];
    if (kind == "text") props["text"] = "k";
    if (kind != "line" && pick(rng, 2) == 0) props["fillColor"] = Json{{"scale", "cat"}, {"field", "k"}};
    geoms.push_back(Json{{"type", kind}, {"data", datasets[pick(rng, datasets.size())]}, {"properties", props}});
  }
  spec["geom"] = geoms;
  if (pick(rng, 2) == 0) {
    spec["axes"] = Json::array({Json{{"type", "x"}, {"scale", numeric[0].first}},
                                Json{{"type", "y"}, {"scale", numeric[1].first}}});
  }
  if (pick(rng, 2) == 0) spec["guides"] = Json::array({Json{{"type", "legend"}, {"domain", Json{{"scale", "cat"}}}}});
  return spec;
}

namespace {

// Every location in a document, as pointers.
void pointers(const Json& j, const std::string& at, std::vector<std::string>& out) {
  if (!at.empty()) out.push_back(at);
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) pointers(it.value(), gogc::pointer_child(at, it.key()), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) pointers(j[i], gogc::pointer_child(at, i), out);
  }
}

}  // namespace

Json mutate_spec(Rng& rng, Json doc) {
  std::vector<std::string> all;
  pointers(doc, "", all);
  const int n = 1 + static_cast<int>(pick(rng, 3));
  for (int k = 0; k < n && !all.empty(); ++k) {
    const Json::json_pointer ptr(all[pick(rng, all.size())]);
    if (!doc.contains(ptr)) continue;
    Json& target = doc[ptr];
    switch (pick(rng, 6)) {
      case 0: target = target.is_string() ? Json(42) : Json("oops"); break;
      case 1: target = "bogus"; break;
      case 2: target = Json::object(); break;
      case 3: {
        Json& parent = doc[ptr.parent_pointer()];
        if (parent.is_object()) parent.erase(ptr.back());
        break;
      }
      case 4: target = "zscale"; break;
      default: target = -1; break;
    }
    all.clear();
    pointers(doc, "", all);
  }
  return doc;
}


}  // namespace testing
