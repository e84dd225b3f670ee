#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gogc/coords.hpp"
#include "gogc/geometry.hpp"
#include "gogc/scales.hpp"
#include "gogc/style.hpp"
#include "gogc/transform.hpp"

namespace gogc {

// Step is the smallest {1, 2, 5} x 10^k that splits [d0, d1] into at most
// `target` intervals. Throws DegenerateDomain unless d0 < d1 (both finite).
double nice_step(double d0, double d1, int target = defaults::kTicks);
// Multiples of nice_step inside [d0, d1], ascending.
std::vector<double> nice_ticks(double d0, double d1, int target = defaults::kTicks);

struct TextSpec {
  std::string font = std::string(defaults::kFont);
  std::string color = std::string(defaults::kTextColor);

  bool operator==(const TextSpec&) const = default;
};

struct Annotation {
  std::string title;
  std::string position = "edge";  // edge | start
  std::string font = std::string(defaults::kTitleFont);
  std::string color = std::string(defaults::kTextColor);

  bool operator==(const Annotation&) const = default;
};

enum class AxisDim { X, Y };

struct AxisSpec {
  AxisDim dim = AxisDim::X;
  std::optional<std::string> scale;
  std::optional<std::string> data;
  std::optional<std::string> field;
  std::string orient;  // empty: bottom for x, left for y
  bool grid = false;
  int ticks = defaults::kTicks;
  TextSpec text;
  std::optional<Annotation> annotation;
  std::optional<VariableTransform> transform;

  bool operator==(const AxisSpec&) const = default;
};

// Axis line, ticks, labels, grid and title. `scale` maps axis values into
// range space; for parallel kinds `index` picks the column or spoke.
// Throws UnlinkedScale when scale is null and BadOrient for an orient the
// axis cannot take.
Commands render_axis(const AxisSpec& axis, const ResolvedScale* scale, const CoordSystem& coords,
                     std::size_t index = 0);

struct LegendPosition {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const LegendPosition&) const = default;
};

struct GuideSpec {
  std::string scale;
  std::string title;
  std::optional<LegendPosition> position;  // default: right of the inner area, top aligned
  std::string font = std::string(defaults::kFont);

  bool operator==(const GuideSpec&) const = default;
};

// Labels for the buckets of a quantile scale: "< t1", "[t1, t2)", ..., ">= tm".
std::vector<std::string> quantile_labels(const ResolvedScale& scale);

// One swatch and label per category or bucket, title on top. Throws
// ContinuousRangeUnsupported for scales with a continuous range.
Commands render_legend(const GuideSpec& guide, const ResolvedScale& scale, const PlotFrame& frame);

}  // namespace gogc
