#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gogc/datastore.hpp"
#include "gogc/diagnostic.hpp"

namespace gogc {

// ---------------------------------------------------------------------------
// Summary statistics

enum class StatKind { Mean, Std, Median, Min, Max, Count, Sum, Quantile };

struct Stat {
  StatKind kind = StatKind::Mean;
  double p = 0.5;  // quantile probability, used only by Quantile

  bool operator==(const Stat&) const = default;
};

// Accepts "mean", "std", "median", "min", "max", "count", "sum" and
// "quantile(p)". Throws UnknownStatistic or BadQuantile.
Stat parse_stat(std::string_view text);
std::string to_string(const Stat& stat);

// Sample std (n - 1), type-7 quantile. Count and sum accept empty input;
// std needs at least two values.
double compute_stat(std::span<const double> values, const Stat& stat);

// Type-7 quantile of an already sorted, non-empty sample.
double quantile_sorted(std::span<const double> sorted, double p);

// ---------------------------------------------------------------------------
// Filter

// Comparisons (< <= == != >= >) combined with and/or/not and parentheses.
// Operands are field names, numbers, 'single' or "double" quoted strings,
// true and false. Fields whose names are not plain identifiers can be written
// in backticks: `economy (mpg)` > 20.
class Predicate {
 public:
  struct Operand {
    enum class Kind { Field, Number, Text, Bool } kind = Kind::Number;
    std::string field;
    DataValue literal;
  };
  enum class Op { Lt, Le, Eq, Ne, Ge, Gt };
  struct Node {
    enum class Kind { Compare, And, Or, Not, Truthy } kind = Kind::Compare;
    Op op = Op::Eq;
    Operand lhs, rhs;            // Compare; Truthy uses lhs
    std::size_t a = 0, b = 0;    // children (indices into nodes_)
  };

  static Predicate parse(std::string_view text);

  // Field names referenced by the expression, in first-use order.
  const std::vector<std::string>& fields() const { return fields_; }
  const std::string& source() const { return source_; }

  // Resolves field references against the table and checks operand types.
  // Throws UnknownField or TypeMismatch.
  void check(const DataTable& table) const;
  // Row must not contain nulls in referenced fields.
  bool evaluate(const DataTable& table, std::size_t row) const;

 private:
  std::string source_;
  std::vector<std::string> fields_;
  std::vector<Node> nodes_;  // root is nodes_.back()
  friend struct PredicateParser;
};

DataTable apply_filter(const DataTable& table, const Predicate& predicate);
DataTable apply_filter(const DataTable& table, std::string_view predicate);

// ---------------------------------------------------------------------------
// Group

struct Aggregate {
  std::string field;
  Stat stat;
  std::string output;
};

DataTable apply_group(const DataTable& table, const std::vector<std::string>& keys,
                      const std::vector<Aggregate>& aggregates);

// ---------------------------------------------------------------------------
// Algebra

enum class JoinSide { Left, Right };

// First matching row wins; keys with more than one match on the attached side
// add one warning each.
DataTable algebra_join(const DataTable& left, const DataTable& right, std::string_view key,
                       JoinSide side, Warnings* warnings = nullptr);

DataTable algebra_cross(const DataTable& left, const DataTable& right);

inline constexpr std::size_t kGlyphBlocks = 9;

// Grey level per block of a 3x3 glyph, row-major. 0 is the column minimum,
// 1 the maximum; unused blocks and degenerate columns sit at 0.5.
struct NestGlyph {
  double x = 0.0;
  double y = 0.0;
  std::size_t row = 0;
  std::array<double, kGlyphBlocks> levels{};
};

// Rows with a null x or y produce no glyph; a null glyph cell renders 0.5.
std::vector<NestGlyph> algebra_nest(const DataTable& table, std::string_view x, std::string_view y,
                                    const std::vector<std::string>& glyph_fields);

// ---------------------------------------------------------------------------
// Variables

using Properties = std::map<std::string, DataValue>;

struct VariableTransform {
  std::string function;  // pow | log | identity
  Properties properties;  // pow: "power"; all: optional output "name"
};

bool is_variable_function(std::string_view name);
bool is_generator_function(std::string_view name);

// Appends the transformed column (named by properties["name"], defaulting to
// "<function>_<field>").
DataTable apply_variable_transform(const DataTable& table, const VariableTransform& t,
                                   std::string_view field);

// Applies the function to one value; shared with axes that transform values
// before scaling.
double apply_variable_function(const VariableTransform& t, double value);

// fibonacci {length, field} and linspace {start, stop, length|n, field}.
// "fibonnaci" is accepted as an alias. The table is named properties["name"]
// when present.
DataTable run_generator(std::string_view function, const Properties& properties);

}  // namespace gogc
