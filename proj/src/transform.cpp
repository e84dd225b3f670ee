#include "gogc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gogc/error.hpp"

namespace gogc {

// ---------------------------------------------------------------------------
// Statistics

Stat parse_stat(std::string_view text) {
  static const std::map<std::string, StatKind, std::less<>> kNames = {
      {"mean", StatKind::Mean}, {"std", StatKind::Std}, {"median", StatKind::Median},
      {"min", StatKind::Min},   {"max", StatKind::Max}, {"count", StatKind::Count},
      {"sum", StatKind::Sum},
  };
  if (auto it = kNames.find(text); it != kNames.end()) return Stat{it->second, 0.5};
  constexpr std::string_view prefix = "quantile(";
  if (text.starts_with(prefix) && text.ends_with(")")) {
    std::string inner(text.substr(prefix.size(), text.size() - prefix.size() - 1));
    char* end = nullptr;
    double p = std::strtod(inner.c_str(), &end);
    if (inner.empty() || end != inner.c_str() + inner.size() || !std::isfinite(p)) {
      fail(ErrorCode::BadQuantile, "cannot read probability in '" + std::string(text) + "'");
    }
    if (p < 0.0 || p > 1.0) fail(ErrorCode::BadQuantile, "probability " + inner + " outside [0, 1]");
    return Stat{StatKind::Quantile, p};
  }
  fail(ErrorCode::UnknownStatistic, "'" + std::string(text) + "'");
}

std::string to_string(const Stat& stat) {
  switch (stat.kind) {
    case StatKind::Mean: return "mean";
    case StatKind::Std: return "std";
    case StatKind::Median: return "median";
    case StatKind::Min: return "min";
    case StatKind::Max: return "max";
    case StatKind::Count: return "count";
    case StatKind::Sum: return "sum";
    case StatKind::Quantile: return "quantile(" + display(number_value(stat.p)) + ")";
  }
  return "mean";
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) fail(ErrorCode::EmptyInput, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::BadQuantile, "probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double compute_stat(std::span<const double> values, const Stat& stat) {
  const double n = static_cast<double>(values.size());
  switch (stat.kind) {
    case StatKind::Count: return n;
    case StatKind::Sum: return std::accumulate(values.begin(), values.end(), 0.0);
    default: break;
  }
  if (values.empty()) fail(ErrorCode::EmptyInput, to_string(stat) + " of an empty sample");
  switch (stat.kind) {
    case StatKind::Mean: return std::accumulate(values.begin(), values.end(), 0.0) / n;
    case StatKind::Std: {
      if (values.size() < 2) fail(ErrorCode::EmptyInput, "sample std needs at least two values");
      const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      return std::sqrt(ss / (n - 1.0));
    }
    case StatKind::Min: return *std::min_element(values.begin(), values.end());
    case StatKind::Max: return *std::max_element(values.begin(), values.end());
    case StatKind::Median:
    case StatKind::Quantile: {
      if (stat.kind == StatKind::Quantile && !(stat.p >= 0.0 && stat.p <= 1.0)) {
        fail(ErrorCode::BadQuantile, "probability outside [0, 1]");
      }
      std::vector<double> sorted(values.begin(), values.end());
      std::sort(sorted.begin(), sorted.end());
      return quantile_sorted(sorted, stat.kind == StatKind::Median ? 0.5 : stat.p);
    }
    default: break;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Group

DataTable apply_group(const DataTable& table, const std::vector<std::string>& keys,
                      const std::vector<Aggregate>& aggregates) {
  std::vector<std::size_t> key_cols;
  std::vector<Column> out_cols;
  for (const auto& k : keys) {
    key_cols.push_back(table.column_index(k));
    out_cols.push_back(table.columns()[key_cols.back()]);
  }
  std::vector<std::size_t> agg_cols;
  for (const auto& a : aggregates) {
    std::size_t idx = table.column_index(a.field);
    if (a.stat.kind != StatKind::Count && table.columns()[idx].type != ColumnType::Number) {
      fail(ErrorCode::NonNumericField, to_string(a.stat) + " over non-numeric field '" + a.field + "'");
    }
    agg_cols.push_back(idx);
    out_cols.push_back(Column{a.output, ColumnType::Number});
  }

  std::map<Row, std::size_t> group_of;
  std::vector<Row> group_keys;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    Row key;
    for (std::size_t c : key_cols) key.push_back(table.at(r, c));
    auto [it, inserted] = group_of.emplace(key, group_keys.size());
    if (inserted) {
      group_keys.push_back(std::move(key));
      members.emplace_back();
    }
    members[it->second].push_back(r);
  }

  std::vector<Row> rows;
  for (std::size_t g = 0; g < group_keys.size(); ++g) {
    Row row = group_keys[g];
    for (std::size_t a = 0; a < aggregates.size(); ++a) {
      std::vector<double> values;
      std::size_t non_null = 0;
      for (std::size_t r : members[g]) {
        const DataValue& v = table.at(r, agg_cols[a]);
        if (is_null(v)) continue;
        ++non_null;
        if (const auto* d = std::get_if<double>(&v)) values.push_back(*d);
      }
      const Stat& stat = aggregates[a].stat;
      if (stat.kind == StatKind::Count) {
        row.push_back(number_value(static_cast<double>(non_null)));
      } else if (values.empty() || (stat.kind == StatKind::Std && values.size() < 2)) {
        row.push_back(null_value());
      } else {
        row.push_back(number_value(compute_stat(values, stat)));
      }
    }
    rows.push_back(std::move(row));
  }
  return DataTable::with_columns(table.name(), std::move(out_cols), std::move(rows));
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

std::string unique_name(std::string name, const std::set<std::string>& taken, const std::string& suffix) {
  while (taken.count(name)) name += suffix;
  return name;
}

// Keeps every primary row and attaches the first matching secondary row.
DataTable join_rows(const DataTable& primary, const DataTable& secondary, std::string_view key,
                    const std::string& suffix, Warnings* warnings) {
  const std::size_t pk = primary.column_index(key);
  const std::size_t sk = secondary.column_index(key);

  std::vector<Column> cols = primary.columns();
  std::set<std::string> taken;
  for (const auto& c : cols) taken.insert(c.name);
  std::vector<std::size_t> attached;
  for (std::size_t c = 0; c < secondary.column_count(); ++c) {
    if (c == sk) continue;
    Column col = secondary.columns()[c];
    col.name = unique_name(col.name, taken, suffix);
    taken.insert(col.name);
    cols.push_back(col);
    attached.push_back(c);
  }

  std::map<DataValue, std::vector<std::size_t>> index;
  for (std::size_t r = 0; r < secondary.row_count(); ++r) {
    const DataValue& k = secondary.at(r, sk);
    if (!is_null(k)) index[k].push_back(r);
  }

  std::set<DataValue> warned;
  std::vector<Row> rows;
  rows.reserve(primary.row_count());
  for (std::size_t r = 0; r < primary.row_count(); ++r) {
    Row row = primary.rows()[r];
    const DataValue& k = primary.at(r, pk);
    auto it = is_null(k) ? index.end() : index.find(k);
    if (it == index.end()) {
      row.resize(cols.size());
    } else {
      if (it->second.size() > 1 && warnings && warned.insert(k).second) {
        warnings->push_back("join key " + display(k) + " matches " + std::to_string(it->second.size()) +
                            " rows of '" + secondary.name() + "'; the first match is used");
      }
      for (std::size_t c : attached) row.push_back(secondary.at(it->second.front(), c));
    }
    rows.push_back(std::move(row));
  }
  return DataTable::with_columns(primary.name(), std::move(cols), std::move(rows));
}

}  // namespace

DataTable algebra_join(const DataTable& left, const DataTable& right, std::string_view key, JoinSide side,
                       Warnings* warnings) {
  if (side == JoinSide::Left) return join_rows(left, right, key, "_r", warnings);
  return join_rows(right, left, key, "_l", warnings);
}

DataTable algebra_cross(const DataTable& left, const DataTable& right) {
  std::vector<Column> cols = left.columns();
  std::set<std::string> taken;
  for (const auto& c : cols) taken.insert(c.name);
  for (Column c : right.columns()) {
    c.name = unique_name(c.name, taken, "_r");
    taken.insert(c.name);
    cols.push_back(std::move(c));
  }
  std::vector<Row> rows;
  rows.reserve(left.row_count() * right.row_count());
  for (const auto& l : left.rows()) {
    for (const auto& r : right.rows()) {
      Row row = l;
      row.insert(row.end(), r.begin(), r.end());
      rows.push_back(std::move(row));
    }
  }
  return DataTable::with_columns(left.name(), std::move(cols), std::move(rows));
}

std::vector<NestGlyph> algebra_nest(const DataTable& table, std::string_view x, std::string_view y,
                                    const std::vector<std::string>& glyph_fields) {
  if (glyph_fields.size() > kGlyphBlocks) {
    fail(ErrorCode::TooManyGlyphFields, std::to_string(glyph_fields.size()) + " glyph fields, at most 9");
  }
  if (glyph_fields.empty()) fail(ErrorCode::BadProperties, "nesting needs at least one glyph field");
  table.numeric_values(x);
  table.numeric_values(y);
  const std::size_t xc = table.column_index(x);
  const std::size_t yc = table.column_index(y);

  struct Norm {
    std::size_t col;
    double lo, hi;
    bool any;
  };
  std::vector<Norm> norms;
  for (const auto& f : glyph_fields) {
    std::vector<double> v = table.numeric_values(f);
    Norm n{table.column_index(f), 0.0, 0.0, !v.empty()};
    if (n.any) {
      auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      n.lo = *lo;
      n.hi = *hi;
    }
    norms.push_back(n);
  }

  std::vector<NestGlyph> out;
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    const DataValue& xv = table.at(r, xc);
    const DataValue& yv = table.at(r, yc);
    if (is_null(xv) || is_null(yv)) continue;
    NestGlyph g;
    g.x = std::get<double>(xv);
    g.y = std::get<double>(yv);
    g.row = r;
    g.levels.fill(0.5);
    for (std::size_t i = 0; i < norms.size(); ++i) {
      const DataValue& v = table.at(r, norms[i].col);
      if (is_null(v) || norms[i].hi == norms[i].lo) continue;
      g.levels[i] = (std::get<double>(v) - norms[i].lo) / (norms[i].hi - norms[i].lo);
    }
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variables and generators

namespace {

std::optional<double> number_prop(const Properties& props, const std::string& key) {
  auto it = props.find(key);
  if (it == props.end()) return std::nullopt;
  if (!is_number(it->second)) fail(ErrorCode::BadProperties, "property '" + key + "' must be a number");
  return std::get<double>(it->second);
}

std::optional<std::string> text_prop(const Properties& props, const std::string& key) {
  auto it = props.find(key);
  if (it == props.end()) return std::nullopt;
  if (!is_text(it->second)) fail(ErrorCode::BadProperties, "property '" + key + "' must be a string");
  return std::get<std::string>(it->second);
}

std::size_t count_prop(const Properties& props, const std::string& key) {
  auto v = number_prop(props, key);
  if (!v) fail(ErrorCode::BadProperties, "missing property '" + key + "'");
  if (*v < 0.0 || std::floor(*v) != *v || *v > 1e7) {
    fail(ErrorCode::BadProperties, "property '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(*v);
}

}  // namespace

bool is_variable_function(std::string_view name) {
  return name == "pow" || name == "log" || name == "identity";
}

bool is_generator_function(std::string_view name) {
  return name == "fibonacci" || name == "fibonnaci" || name == "linspace";
}

double apply_variable_function(const VariableTransform& t, double value) {
  if (t.function == "identity") return value;
  if (t.function == "log") {
    if (!(value > 0.0)) fail(ErrorCode::DomainError, "log of non-positive value " + display(number_value(value)));
    return std::log(value);
  }
  if (t.function == "pow") {
    auto power = number_prop(t.properties, "power");
    if (!power) fail(ErrorCode::BadProperties, "pow needs a 'power' property");
    double out = std::pow(value, *power);
    if (!std::isfinite(out)) {
      fail(ErrorCode::DomainError, "pow(" + display(number_value(value)) + ", " +
                                       display(number_value(*power)) + ") is not finite");
    }
    return out;
  }
  fail(ErrorCode::UnknownFunction, "'" + t.function + "'");
}

DataTable apply_variable_transform(const DataTable& table, const VariableTransform& t, std::string_view field) {
  if (!is_variable_function(t.function)) fail(ErrorCode::UnknownFunction, "'" + t.function + "'");
  table.numeric_values(field);
  const std::size_t col = table.column_index(field);
  const std::string name = text_prop(t.properties, "name").value_or(t.function + "_" + std::string(field));

  std::vector<Column> cols = table.columns();
  cols.push_back(Column{name, ColumnType::Number});
  std::vector<Row> rows = table.rows();
  for (auto& row : rows) {
    const DataValue& v = row[col];
    row.push_back(is_null(v) ? null_value() : number_value(apply_variable_function(t, std::get<double>(v))));
  }
  return DataTable::with_columns(table.name(), std::move(cols), std::move(rows));
}

DataTable run_generator(std::string_view function, const Properties& properties) {
  const std::string field = text_prop(properties, "field").value_or("x");
  const std::string name = text_prop(properties, "name").value_or(std::string(function));
  std::vector<Row> rows;
  if (function == "fibonacci" || function == "fibonnaci") {
    const std::size_t n = count_prop(properties, "length");
    double a = 1.0, b = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(Row{number_value(a)});
      double next = a + b;
      a = b;
      b = next;
    }
  } else if (function == "linspace") {
    auto start = number_prop(properties, "start");
    auto stop = number_prop(properties, "stop");
    if (!start || !stop) fail(ErrorCode::BadProperties, "linspace needs 'start' and 'stop'");
    const std::size_t n = properties.count("n") ? count_prop(properties, "n") : count_prop(properties, "length");
    for (std::size_t i = 0; i < n; ++i) {
      double v = n == 1 ? *start
                        : *start + (*stop - *start) * static_cast<double>(i) / static_cast<double>(n - 1);
      if (i + 1 == n && n > 1) v = *stop;
      rows.push_back(Row{number_value(v)});
    }
  } else {
    fail(ErrorCode::UnknownFunction, "no generator named '" + std::string(function) + "'");
  }
  return DataTable::with_columns(name, {Column{field, ColumnType::Number}}, std::move(rows));
}

}  // namespace gogc
