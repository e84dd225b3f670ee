#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gogc/scales.hpp"

namespace gogc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// Canvas with equal padding on every side. The inner box hosts the marks.
struct PlotFrame {
  double width = 600.0;
  double height = 400.0;
  double padding = 40.0;

  double inner_x() const { return padding; }
  double inner_y() const { return padding; }
  double inner_width() const { return width - 2.0 * padding; }
  double inner_height() const { return height - 2.0 * padding; }
  Point center() const { return {padding + inner_width() / 2.0, padding + inner_height() / 2.0}; }
  // Radius of the largest circle inside the inner box.
  double polar_radius() const;
  bool valid() const { return inner_width() > 0.0 && inner_height() > 0.0; }

  bool operator==(const PlotFrame&) const = default;
};

enum class CoordKind { Cartesian, Equal, Flip, Polar, Parallel, PolarParallel };

std::string_view to_string(CoordKind k);
// Accepts the axes `type` names: x, y, coord_equal, coord_flip, coord_polar,
// coord_parallel, coord_polar_parallel ("x" and "y" select cartesian).
std::optional<CoordKind> coord_kind_from(std::string_view name);

inline bool is_parallel(CoordKind k) { return k == CoordKind::Parallel || k == CoordKind::PolarParallel; }

// u grows right from the inner left edge; v grows up from the inner bottom.
Point to_canvas_cartesian(const PlotFrame& frame, double u, double v);
// Same as cartesian with the roles of u and v exchanged.
Point to_canvas_flip(const PlotFrame& frame, double u, double v);

// One data unit spans the same number of pixels on both axes; the plot area
// is centered in the inner box.
struct EqualFit {
  double unit = 1.0;  // pixels per data unit
  double left = 0.0;   // canvas x of the x-domain minimum
  double bottom = 0.0;  // canvas y of the y-domain minimum
  NumericPair x_range;  // range-space spans for the x and y scales
  NumericPair y_range;
};
EqualFit fit_equal(const PlotFrame& frame, NumericPair x_domain, NumericPair y_domain);
Point to_canvas_equal(const PlotFrame& frame, NumericPair x_domain, NumericPair y_domain, double x, double y);

// Angle is measured clockwise from 12 o'clock in radians.
Point polar_point(Point center, double angle, double radius);
// Fractions in [0, 1]; radius = R * (inset + (1 - inset) * r_frac).
Point to_canvas_polar(const PlotFrame& frame, double theta_frac, double r_frac, double inset = 0.0);

struct AxisGeometry {
  Point low;   // fraction 0
  Point high;  // fraction 1
  double angle = 0.0;  // clockwise from 12 o'clock; 0 for vertical parallel axes
};

// Vertical axes evenly spread over the inner width, or radial spokes from
// R * inset out to R. Throws TooFewAxes for n < 2.
std::vector<AxisGeometry> parallel_axis_positions(const PlotFrame& frame, std::size_t n, CoordKind kind,
                                                  double inset = 0.1);

// Point i sits at fraction values[i] along axis i. The polar form repeats the
// first point to close the loop. Throws ArityMismatch.
std::vector<Point> polyline_for_record(std::span<const double> values, std::span<const AxisGeometry> axes,
                                       CoordKind kind);

// The coordinate system the compiler hands to marks and axes. Positions
// arrive in range space: scale outputs along the plot's width (u) and height
// (v).
class CoordSystem {
 public:
  CoordSystem() = default;
  CoordSystem(CoordKind kind, PlotFrame frame, double inset = 0.0, std::size_t axis_count = 0);

  CoordKind kind() const { return kind_; }
  const PlotFrame& frame() const { return frame_; }
  double inset() const { return inset_; }
  std::size_t axis_count() const { return axis_count_; }
  bool polar() const { return kind_ == CoordKind::Polar; }

  // Length a named range resolves to: the inner width or height, swapped
  // under flip.
  double extent(NamedExtent e) const;
  // Range-space extents of the u and v dimensions.
  double u_extent() const { return extent(NamedExtent::Width); }
  double v_extent() const { return extent(NamedExtent::Height); }

  Point project(double u, double v) const;
  // Polar only: angle and radius of a range-space position.
  double angle_of(double u) const;
  double radius_of(double v) const;

  std::vector<AxisGeometry> parallel_axes() const;

 private:
  CoordKind kind_ = CoordKind::Cartesian;
  PlotFrame frame_;
  double inset_ = 0.0;
  std::size_t axis_count_ = 0;
};

}  // namespace gogc
