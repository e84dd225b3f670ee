#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gogc/datastore.hpp"
#include "gogc/diagnostic.hpp"

namespace gogc {

enum class ScaleKind { Linear, Log, Exp, Quantile, Ordinal };

std::string_view to_string(ScaleKind k);
std::optional<ScaleKind> scale_kind_from(std::string_view name);

// What a scale maps to: a number (pixels, sizes) or a name (color, symbol).
using ScaleOutput = std::variant<double, std::string>;

struct NumericPair {
  double lo = 0.0;
  double hi = 1.0;
};

struct DomainRef {
  std::string data;
  std::string field;
};

// Explicit numeric values (pair, or a sample for quantile scales), explicit
// categories, or a reference into a dataset.
using DomainSpec = std::variant<std::vector<double>, std::vector<DataValue>, DomainRef>;

enum class NamedExtent { Width, Height };

// Continuous pair, a named plot dimension resolved at link time, or a
// discrete list (colors, positions, symbol names).
using RangeSpec = std::variant<NumericPair, NamedExtent, std::vector<ScaleOutput>>;

struct ScaleDef {
  std::string name;
  ScaleKind kind = ScaleKind::Linear;
  DomainSpec domain = std::vector<double>{0.0, 1.0};
  RangeSpec range = NumericPair{};
  double exponent = 1.0;
  bool clamp = false;
};

// ---------------------------------------------------------------------------
// Pointwise maps

double scale_linear(NumericPair domain, NumericPair range, double v);
double scale_log(NumericPair domain, NumericPair range, double v);
double scale_exp(NumericPair domain, NumericPair range, double exponent, double v);

// Bucket thresholds at the type-7 quantiles i/m, i = 1..m-1.
std::vector<double> quantile_thresholds(std::span<const double> sample, std::size_t m);
// Index of the bucket v falls into; ties move to the higher bucket.
std::size_t quantile_bucket(std::span<const double> thresholds, double v);
template <typename T>
const T& scale_quantile(std::span<const double> sample, std::span<const T> range, double v) {
  auto t = quantile_thresholds(sample, range.size());
  return range[quantile_bucket(t, v)];
}

// Band center of category i out of n.
double scale_ordinal_band(std::size_t index, std::size_t count, NumericPair range);

// ---------------------------------------------------------------------------
// Resolution

struct ResolvedDomain {
  NumericPair extent;              // linear, log, exp
  std::vector<double> sample;      // quantile, sorted
  std::vector<DataValue> categories;  // ordinal, first-occurrence order
};

// Degenerate quantitative extents widen to (v - 0.5, v + 0.5) and append a
// warning. Throws UnknownDataset, UnknownField, EmptyDomain, DomainError.
ResolvedDomain resolve_domain(const ScaleDef& def, const DataRegistry& registry,
                              Warnings* warnings = nullptr);

class ResolvedScale {
 public:
  // `range` must already be concrete (NamedExtent replaced by a pair).
  ResolvedScale(ScaleDef def, ResolvedDomain domain);

  const ScaleDef& def() const { return def_; }
  const std::string& name() const { return def_.name; }
  ScaleKind kind() const { return def_.kind; }
  const ResolvedDomain& domain() const { return domain_; }

  bool continuous_range() const { return std::holds_alternative<NumericPair>(def_.range); }
  NumericPair range_pair() const;
  const std::vector<ScaleOutput>& range_list() const;
  // Discrete range whose every entry is a name (colors or symbols).
  bool named_range() const;
  // True when every output is a number (positions, sizes).
  bool numeric_output() const;
  const std::vector<double>& thresholds() const { return thresholds_; }

  ScaleOutput map(const DataValue& v) const;
  double map_number(const DataValue& v) const;
  // Position of an ordinal category inside the domain. Throws UnknownCategory.
  std::size_t category_index(const DataValue& v) const;
  // Width of one band for ordinal scales with a continuous range.
  double band_width() const;

 private:
  ScaleDef def_;
  ResolvedDomain domain_;
  std::vector<double> thresholds_;
};

}  // namespace gogc
