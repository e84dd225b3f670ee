#include "gogc/coords.hpp"

#include <algorithm>
#include <cmath>

#include "gogc/error.hpp"

namespace gogc {

double PlotFrame::polar_radius() const { return std::min(inner_width(), inner_height()) / 2.0; }

std::string_view to_string(CoordKind k) {
  switch (k) {
    case CoordKind::Cartesian: return "cartesian";
    case CoordKind::Equal: return "coord_equal";
    case CoordKind::Flip: return "coord_flip";
    case CoordKind::Polar: return "coord_polar";
    case CoordKind::Parallel: return "coord_parallel";
    case CoordKind::PolarParallel: return "coord_polar_parallel";
  }
  return "cartesian";
}

std::optional<CoordKind> coord_kind_from(std::string_view name) {
  if (name == "x" || name == "y" || name == "cartesian") return CoordKind::Cartesian;
  if (name == "coord_equal") return CoordKind::Equal;
  if (name == "coord_flip") return CoordKind::Flip;
  if (name == "coord_polar") return CoordKind::Polar;
  if (name == "coord_parallel") return CoordKind::Parallel;
  if (name == "coord_polar_parallel") return CoordKind::PolarParallel;
  return std::nullopt;
}

Point to_canvas_cartesian(const PlotFrame& frame, double u, double v) {
  return {frame.inner_x() + u, frame.inner_y() + frame.inner_height() - v};
}

Point to_canvas_flip(const PlotFrame& frame, double u, double v) { return to_canvas_cartesian(frame, v, u); }

EqualFit fit_equal(const PlotFrame& frame, NumericPair x_domain, NumericPair y_domain) {
  const double dw = x_domain.hi - x_domain.lo;
  const double dh = y_domain.hi - y_domain.lo;
  if (!(dw > 0.0) || !(dh > 0.0)) fail(ErrorCode::DegenerateDomain, "equal coordinates need non-empty domains");
  EqualFit fit;
  fit.unit = std::min(frame.inner_width() / dw, frame.inner_height() / dh);
  const double w = dw * fit.unit;
  const double h = dh * fit.unit;
  const double u0 = (frame.inner_width() - w) / 2.0;
  const double v0 = (frame.inner_height() - h) / 2.0;
  fit.x_range = {u0, u0 + w};
  fit.y_range = {v0, v0 + h};
  fit.left = frame.inner_x() + u0;
  fit.bottom = frame.inner_y() + frame.inner_height() - v0;
  return fit;
}

Point to_canvas_equal(const PlotFrame& frame, NumericPair x_domain, NumericPair y_domain, double x, double y) {
  const EqualFit fit = fit_equal(frame, x_domain, y_domain);
  return {fit.left + (x - x_domain.lo) * fit.unit, fit.bottom - (y - y_domain.lo) * fit.unit};
}

Point polar_point(Point center, double angle, double radius) {
  const double a = angle - kPi / 2.0;
  return {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
}

Point to_canvas_polar(const PlotFrame& frame, double theta_frac, double r_frac, double inset) {
  const double radius = frame.polar_radius() * (inset + (1.0 - inset) * r_frac);
  return polar_point(frame.center(), kTwoPi * theta_frac, radius);
}

std::vector<AxisGeometry> parallel_axis_positions(const PlotFrame& frame, std::size_t n, CoordKind kind,
                                                  double inset) {
  if (n < 2) fail(ErrorCode::TooFewAxes, "parallel coordinates need at least 2 axes, got " + std::to_string(n));
  std::vector<AxisGeometry> axes;
  axes.reserve(n);
  if (kind == CoordKind::Parallel) {
    const double step = frame.inner_width() / static_cast<double>(n - 1);
    const double top = frame.inner_y();
    const double bottom = frame.inner_y() + frame.inner_height();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = i + 1 == n ? frame.inner_x() + frame.inner_width() : frame.inner_x() + static_cast<double>(i) * step;
      axes.push_back({{x, bottom}, {x, top}, 0.0});
    }
  } else if (kind == CoordKind::PolarParallel) {
    const Point c = frame.center();
    const double r = frame.polar_radius();
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      axes.push_back({polar_point(c, angle, r * inset), polar_point(c, angle, r), angle});
    }
  } else {
    fail(ErrorCode::IllegalLink, std::string(to_string(kind)) + " has no parallel axes");
  }
  return axes;
}

std::vector<Point> polyline_for_record(std::span<const double> values, std::span<const AxisGeometry> axes,
                                       CoordKind kind) {
  if (values.size() != axes.size()) {
    fail(ErrorCode::ArityMismatch, std::to_string(values.size()) + " values for " + std::to_string(axes.size()) + " axes");
  }
  std::vector<Point> pts;
  pts.reserve(values.size() + 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const AxisGeometry& a = axes[i];
    pts.push_back({a.low.x + values[i] * (a.high.x - a.low.x), a.low.y + values[i] * (a.high.y - a.low.y)});
  }
  if (kind == CoordKind::PolarParallel && !pts.empty()) pts.push_back(pts.front());
  return pts;
}

// ---------------------------------------------------------------------------

CoordSystem::CoordSystem(CoordKind kind, PlotFrame frame, double inset, std::size_t axis_count)
    : kind_(kind), frame_(frame), inset_(inset), axis_count_(axis_count) {
  if (!frame_.valid()) fail(ErrorCode::BadProperties, "padding leaves no room for the plot");
  if ((kind_ == CoordKind::Polar || kind_ == CoordKind::PolarParallel) && !(inset_ >= 0.0 && inset_ < 1.0)) {
    fail(ErrorCode::BadProperties, "polar inset must lie in [0, 1)");
  }
  if (is_parallel(kind_) && axis_count_ < 2) {
    fail(ErrorCode::TooFewAxes, "parallel coordinates need at least 2 axes, got " + std::to_string(axis_count_));
  }
}

double CoordSystem::extent(NamedExtent e) const {
  const bool width = (e == NamedExtent::Width) != (kind_ == CoordKind::Flip);
  return width ? frame_.inner_width() : frame_.inner_height();
}

double CoordSystem::angle_of(double u) const { return kTwoPi * u / frame_.inner_width(); }

double CoordSystem::radius_of(double v) const {
  return frame_.polar_radius() * (inset_ + (1.0 - inset_) * v / frame_.inner_height());
}

Point CoordSystem::project(double u, double v) const {
  switch (kind_) {
    case CoordKind::Flip: return to_canvas_flip(frame_, u, v);
    case CoordKind::Polar: return polar_point(frame_.center(), angle_of(u), radius_of(v));
    default: return to_canvas_cartesian(frame_, u, v);
  }
}

std::vector<AxisGeometry> CoordSystem::parallel_axes() const {
  return parallel_axis_positions(frame_, axis_count_, kind_, inset_);
}

}  // namespace gogc
