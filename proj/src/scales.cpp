#include "gogc/scales.hpp"

#include <algorithm>
#include <cmath>

#include "gogc/error.hpp"
#include "gogc/transform.hpp"

namespace gogc {

std::string_view to_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::Linear: return "linear";
    case ScaleKind::Log: return "log";
    case ScaleKind::Exp: return "exp";
    case ScaleKind::Quantile: return "quantile";
    case ScaleKind::Ordinal: return "ordinal";
  }
  return "linear";
}

std::optional<ScaleKind> scale_kind_from(std::string_view name) {
  if (name == "linear") return ScaleKind::Linear;
  if (name == "log") return ScaleKind::Log;
  if (name == "exp" || name == "pow") return ScaleKind::Exp;
  if (name == "quantile") return ScaleKind::Quantile;
  if (name == "ordinal") return ScaleKind::Ordinal;
  return std::nullopt;
}

double scale_linear(NumericPair d, NumericPair r, double v) {
  if (d.lo == d.hi) fail(ErrorCode::DegenerateDomain, "linear domain has equal endpoints");
  if (v == d.lo) return r.lo;
  if (v == d.hi) return r.hi;
  return r.lo + (v - d.lo) * (r.hi - r.lo) / (d.hi - d.lo);
}

double scale_log(NumericPair d, NumericPair r, double v) {
  if (!(d.lo > 0.0) || !(d.hi > 0.0) || !(v > 0.0)) {
    fail(ErrorCode::DomainError, "log scale needs strictly positive inputs");
  }
  return scale_linear({std::log(d.lo), std::log(d.hi)}, r, std::log(v));
}

double scale_exp(NumericPair d, NumericPair r, double k, double v) {
  const bool integral = std::floor(k) == k;
  if (!integral && (d.lo < 0.0 || d.hi < 0.0 || v < 0.0)) {
    fail(ErrorCode::DomainError, "non-integer exponent over negative values");
  }
  const double lo = std::pow(d.lo, k);
  const double hi = std::pow(d.hi, k);
  if (lo == hi) fail(ErrorCode::DegenerateDomain, "exponent maps both domain endpoints to the same value");
  if (v == d.lo) return r.lo;
  if (v == d.hi) return r.hi;
  return r.lo + (std::pow(v, k) - lo) * (r.hi - r.lo) / (hi - lo);
}

std::vector<double> quantile_thresholds(std::span<const double> sample, std::size_t m) {
  if (sample.empty()) fail(ErrorCode::EmptyInput, "quantile scale over an empty sample");
  if (m == 0) fail(ErrorCode::EmptyInput, "quantile scale with an empty range");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  for (std::size_t i = 1; i < m; ++i) {
    out.push_back(quantile_sorted(sorted, static_cast<double>(i) / static_cast<double>(m)));
  }
  return out;
}

std::size_t quantile_bucket(std::span<const double> thresholds, double v) {
  return static_cast<std::size_t>(std::upper_bound(thresholds.begin(), thresholds.end(), v) - thresholds.begin());
}

double scale_ordinal_band(std::size_t index, std::size_t count, NumericPair r) {
  if (count == 0) fail(ErrorCode::EmptyDomain, "ordinal scale with no categories");
  const double w = (r.hi - r.lo) / static_cast<double>(count);
  return r.lo + (static_cast<double>(index) + 0.5) * w;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> as_numbers(const std::vector<DataValue>& values, const std::string& scale) {
  std::vector<double> out;
  for (const auto& v : values) {
    if (!is_number(v)) fail(ErrorCode::NonNumericField, "scale '" + scale + "' has a non-numeric domain value");
    out.push_back(std::get<double>(v));
  }
  return out;
}

}  // namespace

ResolvedDomain resolve_domain(const ScaleDef& def, const DataRegistry& registry, Warnings* warnings) {
  ResolvedDomain out;
  if (def.kind == ScaleKind::Ordinal) {
    std::vector<DataValue> raw;
    if (const auto* ref = std::get_if<DomainRef>(&def.domain)) {
      const DataTable& t = registry.read(ref->data);
      const std::size_t c = t.column_index(ref->field);
      for (const auto& row : t.rows()) raw.push_back(row[c]);
    } else if (const auto* cats = std::get_if<std::vector<DataValue>>(&def.domain)) {
      raw = *cats;
    } else {
      for (double d : std::get<std::vector<double>>(def.domain)) raw.push_back(number_value(d));
    }
    for (auto& v : raw) {
      if (is_null(v)) continue;
      if (std::find(out.categories.begin(), out.categories.end(), v) == out.categories.end()) {
        out.categories.push_back(v);
      }
    }
    if (out.categories.empty()) fail(ErrorCode::EmptyDomain, "scale '" + def.name + "' has no categories");
    return out;
  }

  std::vector<double> values;
  if (const auto* ref = std::get_if<DomainRef>(&def.domain)) {
    values = registry.read(ref->data).numeric_values(ref->field);
  } else if (const auto* cats = std::get_if<std::vector<DataValue>>(&def.domain)) {
    values = as_numbers(*cats, def.name);
  } else {
    values = std::get<std::vector<double>>(def.domain);
  }
  if (values.empty()) fail(ErrorCode::EmptyDomain, "scale '" + def.name + "' has an empty domain");

  if (def.kind == ScaleKind::Quantile) {
    out.sample = std::move(values);
    std::sort(out.sample.begin(), out.sample.end());
    return out;
  }

  if (std::holds_alternative<DomainRef>(def.domain)) {
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.extent = {*lo, *hi};
  } else {
    if (values.size() != 2) {
      fail(ErrorCode::EmptyDomain, "scale '" + def.name + "' needs a [min, max] domain");
    }
    out.extent = {values[0], values[1]};
    if (out.extent.lo > out.extent.hi) {
      fail(ErrorCode::DegenerateDomain, "scale '" + def.name + "' domain minimum exceeds maximum");
    }
  }
  if (out.extent.lo == out.extent.hi) {
    const double v = out.extent.lo;
    out.extent = {v - 0.5, v + 0.5};
    if (warnings) {
      warnings->push_back("scale '" + def.name + "' has a single-valued domain; widened to [" +
                          display(number_value(out.extent.lo)) + ", " + display(number_value(out.extent.hi)) + "]");
    }
  }
  if (def.kind == ScaleKind::Log && !(out.extent.lo > 0.0)) {
    fail(ErrorCode::DomainError, "log scale '" + def.name + "' needs a strictly positive domain");
  }
  if (def.kind == ScaleKind::Exp && std::floor(def.exponent) != def.exponent && out.extent.lo < 0.0) {
    fail(ErrorCode::DomainError, "scale '" + def.name + "' uses a non-integer exponent over negative values");
  }
  return out;
}

ResolvedScale::ResolvedScale(ScaleDef def, ResolvedDomain domain)
    : def_(std::move(def)), domain_(std::move(domain)) {
  if (std::holds_alternative<NamedExtent>(def_.range)) {
    throw std::logic_error("named range of scale '" + def_.name + "' was not resolved");
  }
  if (def_.kind == ScaleKind::Quantile) {
    if (continuous_range()) {
      fail(ErrorCode::BadProperties, "quantile scale '" + def_.name + "' needs a discrete range");
    }
    if (range_list().empty()) fail(ErrorCode::EmptyInput, "quantile scale '" + def_.name + "' has an empty range");
    thresholds_ = quantile_thresholds(domain_.sample, range_list().size());
  } else if (def_.kind != ScaleKind::Ordinal && !continuous_range()) {
    fail(ErrorCode::BadProperties, std::string(to_string(def_.kind)) + " scale '" + def_.name +
                                       "' needs a continuous [min, max] range");
  }
  if (!continuous_range() && range_list().empty()) {
    fail(ErrorCode::EmptyInput, "scale '" + def_.name + "' has an empty range");
  }
}

NumericPair ResolvedScale::range_pair() const {
  if (const auto* p = std::get_if<NumericPair>(&def_.range)) return *p;
  throw std::logic_error("scale '" + def_.name + "' has a discrete range");
}

const std::vector<ScaleOutput>& ResolvedScale::range_list() const {
  return std::get<std::vector<ScaleOutput>>(def_.range);
}

bool ResolvedScale::named_range() const {
  if (continuous_range()) return false;
  const auto& list = range_list();
  return std::all_of(list.begin(), list.end(),
                     [](const ScaleOutput& o) { return std::holds_alternative<std::string>(o); });
}

bool ResolvedScale::numeric_output() const {
  if (continuous_range()) return true;
  const auto& list = range_list();
  return std::all_of(list.begin(), list.end(), [](const ScaleOutput& o) { return std::holds_alternative<double>(o); });
}

std::size_t ResolvedScale::category_index(const DataValue& v) const {
  const auto& cats = domain_.categories;
  auto it = std::find(cats.begin(), cats.end(), v);
  if (it == cats.end()) fail(ErrorCode::UnknownCategory, "'" + display(v) + "' is not in scale '" + def_.name + "'");
  return static_cast<std::size_t>(it - cats.begin());
}

double ResolvedScale::band_width() const {
  NumericPair r = range_pair();
  return (r.hi - r.lo) / static_cast<double>(std::max<std::size_t>(domain_.categories.size(), 1));
}

ScaleOutput ResolvedScale::map(const DataValue& v) const {
  if (def_.kind == ScaleKind::Ordinal) {
    const std::size_t i = category_index(v);
    if (continuous_range()) return scale_ordinal_band(i, domain_.categories.size(), range_pair());
    const auto& list = range_list();
    return list[i % list.size()];
  }
  if (!is_number(v)) fail(ErrorCode::TypeMismatch, "scale '" + def_.name + "' maps numbers, got '" + display(v) + "'");
  double x = std::get<double>(v);
  if (def_.kind == ScaleKind::Quantile) return range_list()[quantile_bucket(thresholds_, x)];

  const NumericPair d = domain_.extent;
  if (def_.clamp) x = std::clamp(x, d.lo, d.hi);
  switch (def_.kind) {
    case ScaleKind::Linear: return scale_linear(d, range_pair(), x);
    case ScaleKind::Log: return scale_log(d, range_pair(), x);
    case ScaleKind::Exp: return scale_exp(d, range_pair(), def_.exponent, x);
    default: break;
  }
  return 0.0;
}

double ResolvedScale::map_number(const DataValue& v) const {
  ScaleOutput out = map(v);
  if (const auto* d = std::get_if<double>(&out)) return *d;
  fail(ErrorCode::IllegalLink, "scale '" + def_.name + "' produces '" + std::get<std::string>(out) +
                                   "' where a number is needed");
}

}  // namespace gogc
