#include "gogc/datastore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "gogc/error.hpp"

namespace gogc {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Full-string decimal float parse after trimming. nullopt when not numeric;
// non-finite results are reported through `non_finite`.
std::optional<double> parse_number(std::string_view raw, bool& non_finite) {
  non_finite = false;
  std::string_view s = trim(raw);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    if (res.ec == std::errc::result_out_of_range && res.ptr == s.data() + s.size()) {
      non_finite = true;
    }
    return std::nullopt;
  }
  if (!std::isfinite(v)) {
    non_finite = true;
    return std::nullopt;
  }
  return v;
}

ColumnType infer(const std::vector<DataValue>& cells) {
  bool any_number = false, any_bool = false, any_text = false;
  for (const auto& c : cells) {
    any_number |= is_number(c);
    any_bool |= is_bool(c);
    any_text |= is_text(c);
  }
  if (any_text || (any_number && any_bool)) return ColumnType::Text;
  if (any_bool) return ColumnType::Boolean;
  return ColumnType::Number;
}

}  // namespace

std::string display(const DataValue& v) {
  if (is_null(v)) return "null";
  if (const auto* d = std::get_if<double>(&v)) return shortest(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

std::string_view to_string(ColumnType t) {
  switch (t) {
    case ColumnType::Number: return "number";
    case ColumnType::Text: return "text";
    case ColumnType::Boolean: return "boolean";
  }
  return "number";
}

DataTable::DataTable(std::string name, std::vector<std::string> field_names, std::vector<Row> rows)
    : name_(std::move(name)), rows_(std::move(rows)) {
  std::set<std::string> seen;
  for (const auto& f : field_names) {
    if (!seen.insert(f).second) fail(ErrorCode::DuplicateField, "field '" + f + "' appears twice");
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != field_names.size()) {
      fail(ErrorCode::ArityMismatch, "row " + std::to_string(r) + " has " +
                                         std::to_string(rows_[r].size()) + " values, expected " +
                                         std::to_string(field_names.size()));
    }
  }
  columns_.reserve(field_names.size());
  std::vector<DataValue> cells(rows_.size());
  for (std::size_t c = 0; c < field_names.size(); ++c) {
    for (std::size_t r = 0; r < rows_.size(); ++r) cells[r] = rows_[r][c];
    ColumnType type = infer(cells);
    if (type == ColumnType::Text) {
      for (auto& row : rows_) {
        if (!is_null(row[c]) && !is_text(row[c])) row[c] = text_value(display(row[c]));
      }
    }
    columns_.push_back(Column{std::move(field_names[c]), type});
  }
}

DataTable DataTable::with_columns(std::string name, std::vector<Column> columns, std::vector<Row> rows) {
  std::vector<std::string> names;
  for (const auto& c : columns) names.push_back(c.name);
  DataTable t(std::move(name), std::move(names), std::move(rows));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (t.columns_[c].type == columns[c].type) continue;
    for (auto& row : t.rows_) {
      DataValue& v = row[c];
      if (is_null(v)) continue;
      if (columns[c].type == ColumnType::Text) {
        v = text_value(display(v));
      } else if ((columns[c].type == ColumnType::Number && !is_number(v)) ||
                 (columns[c].type == ColumnType::Boolean && !is_bool(v))) {
        fail(ErrorCode::TypeMismatch, "field '" + columns[c].name + "' expects " +
                                          std::string(to_string(columns[c].type)) + " values");
      }
    }
    t.columns_[c].type = columns[c].type;
  }
  return t;
}

std::optional<std::size_t> DataTable::find_column(std::string_view field) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == field) return i;
  }
  return std::nullopt;
}

std::size_t DataTable::column_index(std::string_view field) const {
  auto idx = find_column(field);
  if (!idx) fail(ErrorCode::UnknownField, "dataset '" + name_ + "' has no field '" + std::string(field) + "'");
  return *idx;
}

const Column& DataTable::column(std::string_view field) const { return columns_[column_index(field)]; }

std::vector<std::string> DataTable::field_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::vector<double> DataTable::numeric_values(std::string_view field) const {
  std::size_t idx = column_index(field);
  if (columns_[idx].type != ColumnType::Number) {
    fail(ErrorCode::NonNumericField, "field '" + std::string(field) + "' of dataset '" + name_ +
                                         "' is " + std::string(to_string(columns_[idx].type)));
  }
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (const auto* d = std::get_if<double>(&row[idx])) out.push_back(*d);
  }
  return out;
}

DataTable DataTable::renamed(std::string name) const {
  DataTable copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------
// CSV

DataTable load_csv(std::string_view source, std::string name, TextFormat format, Warnings* warnings) {
  const char delim = format == TextFormat::Tsv ? '\t' : ',';
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;
  std::vector<bool> record_blank;

  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  std::size_t record_start_line = 1;
  std::size_t quote_open_line = 0;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    record_blank.push_back(record.empty() && field.empty() && !field_was_quoted);
    end_field();
    records.push_back(std::move(record));
    record_lines.push_back(record_start_line);
    record.clear();
  };

  for (std::size_t i = 0; i < source.size(); ++i) {
    char c = source[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < source.size() && source[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || field_was_quoted) {
        fail(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": stray quote inside unquoted field");
      }
      in_quotes = true;
      field_was_quoted = true;
      quote_open_line = line;
    } else if (c == delim) {
      end_field();
    } else if (c == '\r' && i + 1 < source.size() && source[i + 1] == '\n') {
      // CRLF handled by the '\n' branch
    } else if (c == '\n') {
      end_record();
      ++line;
      record_start_line = line;
    } else {
      if (field_was_quoted) {
        fail(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": text after closing quote");
      }
      field.push_back(c);
    }
  }
  if (in_quotes) {
    fail(ErrorCode::MalformedCsv, "line " + std::to_string(quote_open_line) + ": unbalanced quote");
  }
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();

  // Trailing blank lines carry no data.
  while (!records.empty() && record_blank.back()) {
    records.pop_back();
    record_lines.pop_back();
    record_blank.pop_back();
  }
  if (records.empty()) fail(ErrorCode::MalformedCsv, "line 1: missing header row");

  std::vector<std::string> header = std::move(records.front());
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      fail(ErrorCode::MalformedCsv, "line " + std::to_string(record_lines[r]) + ": expected " +
                                        std::to_string(width) + " fields, found " +
                                        std::to_string(records[r].size()));
    }
  }

  const std::size_t nrows = records.size() - 1;
  std::vector<Row> rows(nrows, Row(width));
  for (std::size_t c = 0; c < width; ++c) {
    // Classify every cell, then decide the column type from the classes.
    bool all_numeric = true, all_bool = true;
    std::vector<std::optional<double>> numbers(nrows);
    std::vector<bool> empty(nrows), non_finite(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
      const std::string& cell = records[r + 1][c];
      empty[r] = trim(cell).empty();
      if (empty[r]) continue;
      bool nf = false;
      numbers[r] = parse_number(cell, nf);
      non_finite[r] = nf;
      if (!numbers[r] && !nf) all_numeric = false;
      std::string_view t = trim(cell);
      if (t != "true" && t != "false") all_bool = false;
    }
    const bool any_value = std::find(empty.begin(), empty.end(), false) != empty.end();
    for (std::size_t r = 0; r < nrows; ++r) {
      const std::string& cell = records[r + 1][c];
      DataValue& out = rows[r][c];
      if (empty[r]) continue;
      if (all_numeric) {
        if (non_finite[r]) {
          if (warnings) {
            warnings->push_back("dataset '" + name + "' line " + std::to_string(record_lines[r + 1]) +
                                ": non-finite value '" + cell + "' in field '" + header[c] +
                                "' stored as null");
          }
          continue;
        }
        out = number_value(*numbers[r]);
      } else if (all_bool && any_value) {
        out = bool_value(trim(cell) == "true");
      } else {
        out = text_value(cell);
      }
    }
  }
  return DataTable(std::move(name), std::move(header), std::move(rows));
}

// ---------------------------------------------------------------------------
// JSON

DataTable load_json(std::string_view source, std::string name, Warnings* warnings) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::MalformedJson, e.what());
  }
  if (!doc.is_array()) fail(ErrorCode::NonArrayRoot, "dataset '" + name + "' must be a JSON array of objects");

  std::vector<std::string> fields;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& obj = doc[r];
    if (!obj.is_object()) {
      fail(ErrorCode::NonArrayRoot, "element " + std::to_string(r) + " of dataset '" + name + "' is not an object");
    }
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object() || value.is_array()) {
        fail(ErrorCode::NestedObjectValue, "element " + std::to_string(r) + " key '" + key + "' holds a nested value");
      }
      if (index.emplace(key, fields.size()).second) fields.push_back(key);
    }
  }

  std::vector<Row> rows(doc.size(), Row(fields.size()));
  for (std::size_t r = 0; r < doc.size(); ++r) {
    for (const auto& [key, value] : doc[r].items()) {
      DataValue& out = rows[r][index.at(key)];
      if (value.is_null()) continue;
      if (value.is_boolean()) {
        out = bool_value(value.get<bool>());
      } else if (value.is_number()) {
        double d = value.get<double>();
        if (!std::isfinite(d)) {
          if (warnings) warnings->push_back("dataset '" + name + "' element " + std::to_string(r) + ": non-finite value stored as null");
          continue;
        }
        out = number_value(d);
      } else {
        out = text_value(value.get<std::string>());
      }
    }
  }
  return DataTable(std::move(name), std::move(fields), std::move(rows));
}

std::pair<double, double> column_extent(const DataTable& table, std::string_view field) {
  std::vector<double> values = table.numeric_values(field);
  if (values.empty()) fail(ErrorCode::AllNull, "field '" + std::string(field) + "' has no non-null values");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

// ---------------------------------------------------------------------------
// Registry

void DataRegistry::create(const std::string& name, DataTable table) {
  if (contains(name)) fail(ErrorCode::DuplicateDataset, "dataset '" + name + "' already exists");
  tables_.emplace(name, std::make_shared<const DataTable>(table.renamed(name)));
}

const DataTable& DataRegistry::read(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) fail(ErrorCode::UnknownDataset, "no dataset named '" + name + "'");
  return *it->second;
}

void DataRegistry::update(const std::string& name, DataTable table) {
  auto it = tables_.find(name);
  if (it == tables_.end()) fail(ErrorCode::UnknownDataset, "no dataset named '" + name + "'");
  it->second = std::make_shared<const DataTable>(table.renamed(name));
}

void DataRegistry::remove(const std::string& name) {
  if (tables_.erase(name) == 0) fail(ErrorCode::UnknownDataset, "no dataset named '" + name + "'");
}

std::optional<DataTable> DataRegistry::apply(CrudOp op, const std::string& name,
                                             std::optional<DataTable> payload) {
  switch (op) {
    case CrudOp::Create:
      if (!payload) fail(ErrorCode::BadProperties, "create requires a table");
      create(name, std::move(*payload));
      return std::nullopt;
    case CrudOp::Read:
      return read(name);
    case CrudOp::Update:
      if (!payload) fail(ErrorCode::BadProperties, "update requires a table");
      update(name, std::move(*payload));
      return std::nullopt;
    case CrudOp::Delete:
      remove(name);
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::string> DataRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : tables_) out.push_back(k);
  return out;
}

}  // namespace gogc
