#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gogc/diagnostic.hpp"

namespace gogc {

// A single cell. Numbers are always finite.
using DataValue = std::variant<std::monostate, double, std::string, bool>;

inline DataValue null_value() { return DataValue{}; }
inline DataValue number_value(double v) { return DataValue{v}; }
inline DataValue text_value(std::string s) { return DataValue{std::move(s)}; }
inline DataValue bool_value(bool b) { return DataValue{b}; }

inline bool is_null(const DataValue& v) { return std::holds_alternative<std::monostate>(v); }
inline bool is_number(const DataValue& v) { return std::holds_alternative<double>(v); }
inline bool is_text(const DataValue& v) { return std::holds_alternative<std::string>(v); }
inline bool is_bool(const DataValue& v) { return std::holds_alternative<bool>(v); }

// Human readable rendering used for labels and text-column coercion.
std::string display(const DataValue& v);

enum class ColumnType { Number, Text, Boolean };

std::string_view to_string(ColumnType t);

struct Column {
  std::string name;
  ColumnType type = ColumnType::Number;

  bool operator==(const Column&) const = default;
};

using Row = std::vector<DataValue>;

// Immutable after construction. Column types are inferred from the cells:
// boolean or number when every non-null cell agrees, text otherwise (cells of a
// text column are coerced to their textual form). An all-null column is typed
// number.
class DataTable {
 public:
  DataTable() = default;

  // Throws DuplicateField for repeated names and ArityMismatch for ragged rows.
  DataTable(std::string name, std::vector<std::string> field_names, std::vector<Row> rows);

  // Keeps the given column types instead of inferring them (derived tables
  // whose columns may have lost every non-null cell). Cells of text columns
  // are coerced; any other kind mismatch throws TypeMismatch.
  static DataTable with_columns(std::string name, std::vector<Column> columns, std::vector<Row> rows);

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return columns_.size(); }

  std::optional<std::size_t> find_column(std::string_view field) const;
  // Throws UnknownField.
  std::size_t column_index(std::string_view field) const;
  const Column& column(std::string_view field) const;
  std::vector<std::string> field_names() const;

  const DataValue& at(std::size_t row, std::size_t col) const { return rows_[row][col]; }

  // Non-null numeric cells of a column; throws NonNumericField.
  std::vector<double> numeric_values(std::string_view field) const;

  DataTable renamed(std::string name) const;

  bool operator==(const DataTable&) const = default;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

enum class TextFormat { Csv, Tsv };

// RFC 4180 reader with a mandatory header row. Non-finite numeric cells
// ("nan", "inf") become null and append to `warnings`.
DataTable load_csv(std::string_view source, std::string name,
                   TextFormat format = TextFormat::Csv, Warnings* warnings = nullptr);

// Array of flat objects. Columns are the union of keys in first-seen order.
DataTable load_json(std::string_view source, std::string name, Warnings* warnings = nullptr);

// Minimum and maximum over the non-null cells of a numeric column.
std::pair<double, double> column_extent(const DataTable& table, std::string_view field);

enum class CrudOp { Create, Read, Update, Delete };

// Named tables. Tables are shared immutably, so copying a registry is a cheap
// read-only snapshot.
class DataRegistry {
 public:
  void create(const std::string& name, DataTable table);
  const DataTable& read(const std::string& name) const;
  void update(const std::string& name, DataTable table);
  void remove(const std::string& name);

  // Single entry point over the four operations. Read returns the table,
  // the others return nullopt. Payload is required for create and update.
  std::optional<DataTable> apply(CrudOp op, const std::string& name,
                                 std::optional<DataTable> payload = std::nullopt);

  bool contains(const std::string& name) const { return tables_.count(name) != 0; }
  std::vector<std::string> names() const;
  std::size_t size() const { return tables_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const DataTable>> tables_;
};

}  // namespace gogc
