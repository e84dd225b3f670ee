#include "gogc/guides.hpp"

#include <algorithm>
#include <cmath>

#include "gogc/error.hpp"

namespace gogc {

namespace {

struct Step {
  double mantissa = 1.0;
  int exponent = 0;
  double value() const { return mantissa * std::pow(10.0, exponent); }
  // k * step with a single rounding for negative exponents.
  double times(double k) const {
    return exponent < 0 ? k * mantissa / std::pow(10.0, -exponent) : k * mantissa * std::pow(10.0, exponent);
  }
};

Step find_step(double d0, double d1, int target) {
  if (!std::isfinite(d0) || !std::isfinite(d1) || !(d0 < d1)) {
    fail(ErrorCode::DegenerateDomain, "ticks need d0 < d1, got [" + format_label(d0) + ", " + format_label(d1) + "]");
  }
  if (target < 1) fail(ErrorCode::BadProperties, "tick target must be positive");
  const double span = d1 - d0;
  int e = static_cast<int>(std::floor(std::log10(span / target))) - 1;
  for (;; ++e) {
    for (double m : {1.0, 2.0, 5.0}) {
      Step s{m, e};
      if (std::ceil(span / s.value() - 1e-9) <= target) return s;
    }
  }
}

}  // namespace

double nice_step(double d0, double d1, int target) { return find_step(d0, d1, target).value(); }

std::vector<double> nice_ticks(double d0, double d1, int target) {
  const Step s = find_step(d0, d1, target);
  const double step = s.value();
  const double k0 = std::ceil(d0 / step - 1e-9);
  const double k1 = std::floor(d1 / step + 1e-9);
  std::vector<double> out;
  for (double k = k0; k <= k1; k += 1.0) {
    const double t = std::clamp(s.times(k), d0, d1);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  return out;
}

namespace {

struct Tick {
  double position;  // range space
  std::string label;
};

std::vector<Tick> axis_ticks(const ResolvedScale& scale, int target) {
  std::vector<Tick> out;
  if (scale.kind() == ScaleKind::Ordinal) {
    for (const auto& c : scale.domain().categories) out.push_back({scale.map_number(c), display(c)});
    return out;
  }
  std::vector<double> values;
  if (scale.kind() == ScaleKind::Quantile) {
    const auto& sample = scale.domain().sample;
    values.push_back(sample.front());
    for (double t : scale.thresholds()) values.push_back(t);
    values.push_back(sample.back());
  } else {
    values = nice_ticks(scale.domain().extent.lo, scale.domain().extent.hi, target);
  }
  for (double v : values) out.push_back({scale.map_number(number_value(v)), format_label(v)});
  return out;
}

Style axis_stroke() {
  Style s;
  s.stroke = std::string(defaults::kAxisColor);
  return s;
}

Style grid_stroke() {
  Style s;
  s.stroke = std::string(defaults::kGridColor);
  return s;
}

Style ring_stroke(std::string color) {
  Style s;
  s.stroke = std::move(color);
  return s;
}

TextCmd label(Point at, std::string content, const std::string& font, const std::string& color, TextAnchor anchor) {
  TextCmd t;
  t.x = at.x;
  t.y = at.y;
  t.content = std::move(content);
  t.font = font;
  t.anchor = anchor;
  t.style.fill = normalize_color(color).value_or(std::string(defaults::kTextColor));
  return t;
}

Point add(Point p, Point d, double k) { return {p.x + d.x * k, p.y + d.y * k}; }

Point unit(Point from, Point to) {
  const double dx = to.x - from.x, dy = to.y - from.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return {0.0, 0.0};
  return {dx / len, dy / len};
}

// Label placement beyond the end of a tick pointing along `dir`.
TextCmd tick_label(Point tick_end, Point dir, std::string content, const TextSpec& text) {
  TextAnchor anchor = TextAnchor::Middle;
  Point at = add(tick_end, dir, 3.0);
  if (std::fabs(dir.x) > std::fabs(dir.y)) {
    anchor = dir.x < 0.0 ? TextAnchor::End : TextAnchor::Start;
    at.y += 3.0;
  } else if (dir.y > 0.0) {
    at.y += 9.0;
  }
  return label(at, std::move(content), text.font, text.color, anchor);
}

enum class TitleMode { Lean, Center, Radial };

void title_at(Commands& out, const AxisSpec& axis, Point low, Point high, Point outward, TitleMode mode) {
  const bool radial = mode == TitleMode::Radial;
  if (!axis.annotation || axis.annotation->title.empty()) return;
  const Annotation& a = *axis.annotation;
  const bool start = a.position == "start";
  const Point along = unit(low, high);
  Point at;
  TextAnchor anchor = TextAnchor::Middle;
  if (along.x == 0.0 && along.y == 0.0) {
    at = add(high, outward, 20.0);
  } else if (radial) {
    // spokes: keep going past the end
    at = start ? add(low, along, -10.0) : add(high, along, 12.0);
    at.y += 3.0;
    const double dx = start ? -along.x : along.x;
    if (dx > 0.3) anchor = TextAnchor::Start;
    if (dx < -0.3) anchor = TextAnchor::End;
  } else if (std::fabs(along.x) > std::fabs(along.y)) {
    // horizontal: under the tick labels, flush with the chosen end
    at = add(start ? low : high, outward, 28.0);
    at.y += 3.0;
    anchor = (start == (along.x > 0.0)) ? TextAnchor::Start : TextAnchor::End;
  } else {
    at = start ? add(low, along, -14.0) : add(high, along, 10.0);
    // lean into the margin instead of centering on the line
    if (mode == TitleMode::Lean && outward.x < 0.0) {
      at.x -= 30.0;
      anchor = TextAnchor::Start;
    } else if (mode == TitleMode::Lean && outward.x > 0.0) {
      at.x += 30.0;
      anchor = TextAnchor::End;
    }
  }
  out.push_back(label(at, a.title, a.font, a.color, anchor));
}

enum class Side { Low, High };

// Which edge of the plot an axis sits on, in range space.
Side axis_side(const AxisSpec& axis, CoordKind kind) {
  std::string orient = axis.orient;
  const bool flip = kind == CoordKind::Flip;
  const bool horizontal = (axis.dim == AxisDim::X) != flip;
  if (orient.empty()) return Side::Low;
  if (horizontal) {
    if (orient == "bottom") return Side::Low;
    if (orient == "top") return Side::High;
  } else {
    if (orient == "left") return Side::Low;
    if (orient == "right") return Side::High;
  }
  fail(ErrorCode::BadOrient, std::string("orient '") + orient + "' does not fit a " +
                                 (horizontal ? "horizontal" : "vertical") + " axis");
}

Commands cartesian_axis(const AxisSpec& axis, const ResolvedScale& scale, const CoordSystem& coords) {
  const bool x_axis = axis.dim == AxisDim::X;
  const Side side = axis_side(axis, coords.kind());
  // The axis runs along one range-space dimension at a fixed value of the other.
  const double other_ext = x_axis ? coords.v_extent() : coords.u_extent();
  const double fixed = side == Side::Low ? 0.0 : other_ext;
  const double inward = side == Side::Low ? 1.0 : -1.0;
  auto at = [&](double along, double across) {
    return x_axis ? coords.project(along, across) : coords.project(across, along);
  };
  const double ext = x_axis ? coords.u_extent() : coords.v_extent();

  Commands out;
  const auto ticks = axis_ticks(scale, axis.ticks);
  if (axis.grid) {
    for (const auto& t : ticks) out.push_back(polyline_path({at(t.position, 0.0), at(t.position, other_ext)}, grid_stroke()));
  }
  const Point low = at(0.0, fixed), high = at(ext, fixed);
  out.push_back(polyline_path({low, high}, axis_stroke()));
  const Point outward = unit(at(0.0, fixed + inward), low);
  for (const auto& t : ticks) {
    const Point p = at(t.position, fixed);
    const Point end = add(p, outward, defaults::kTickLength);
    out.push_back(polyline_path({p, end}, axis_stroke()));
    out.push_back(tick_label(end, outward, t.label, axis.text));
  }
  title_at(out, axis, low, high, outward, TitleMode::Lean);
  return out;
}

Commands polar_axis(const AxisSpec& axis, const ResolvedScale& scale, const CoordSystem& coords) {
  const Point c = coords.frame().center();
  const auto ticks = axis_ticks(scale, axis.ticks);
  Commands out;
  if (axis.dim == AxisDim::X) {
    const double r = coords.radius_of(coords.v_extent());
    if (axis.grid) {
      for (const auto& t : ticks) {
        const double a = coords.angle_of(t.position);
        out.push_back(polyline_path({polar_point(c, a, coords.radius_of(0.0)), polar_point(c, a, r)}, grid_stroke()));
      }
    }
    out.push_back(CircleCmd{c.x, c.y, r, ring_stroke(std::string(defaults::kAxisColor))});
    for (const auto& t : ticks) {
      const double a = coords.angle_of(t.position);
      const Point p = polar_point(c, a, r);
      const Point end = polar_point(c, a, r + defaults::kTickLength);
      out.push_back(polyline_path({p, end}, axis_stroke()));
      out.push_back(tick_label(end, unit(p, end), t.label, axis.text));
    }
    if (axis.annotation && !axis.annotation->title.empty()) {
      const Annotation& a = *axis.annotation;
      out.push_back(label({c.x, c.y - r - 20.0}, a.title, a.font, a.color, TextAnchor::Middle));
    }
    return out;
  }
  const Point low = polar_point(c, 0.0, coords.radius_of(0.0));
  const Point high = polar_point(c, 0.0, coords.radius_of(coords.v_extent()));
  if (axis.grid) {
    for (const auto& t : ticks) out.push_back(CircleCmd{c.x, c.y, coords.radius_of(t.position), grid_stroke()});
  }
  out.push_back(polyline_path({low, high}, axis_stroke()));
  const Point outward{-1.0, 0.0};
  for (const auto& t : ticks) {
    const Point p = polar_point(c, 0.0, coords.radius_of(t.position));
    const Point end = add(p, outward, defaults::kTickLength);
    out.push_back(polyline_path({p, end}, axis_stroke()));
    out.push_back(tick_label(end, outward, t.label, axis.text));
  }
  title_at(out, axis, low, high, outward, TitleMode::Center);
  return out;
}

Commands parallel_axis(const AxisSpec& axis, const ResolvedScale& scale, const CoordSystem& coords,
                       std::size_t index) {
  const auto axes = coords.parallel_axes();
  if (index >= axes.size()) fail(ErrorCode::ArityMismatch, "axis " + std::to_string(index) + " has no position");
  const AxisGeometry& g = axes[index];
  if (!axis.orient.empty() && axis.orient != "left" && axis.orient != "right") {
    fail(ErrorCode::BadOrient, "parallel axes take orient left or right, got '" + axis.orient + "'");
  }
  const bool right = axis.orient == "right";
  const Point along = unit(g.low, g.high);
  // Perpendicular to the axis, on its left or right when looking from low to high.
  const Point outward = right ? Point{-along.y, along.x} : Point{along.y, -along.x};

  const NumericPair range = scale.continuous_range() ? scale.range_pair() : NumericPair{0.0, 1.0};
  const double span = range.hi - range.lo;
  const auto ticks = axis_ticks(scale, axis.ticks);
  const Point c = coords.frame().center();
  const bool polar = coords.kind() == CoordKind::PolarParallel;

  Commands out;
  auto point_at = [&](double position) {
    const double f = span == 0.0 ? 0.5 : (position - range.lo) / span;
    return add(g.low, {g.high.x - g.low.x, g.high.y - g.low.y}, f);
  };
  if (axis.grid) {
    const PlotFrame& fr = coords.frame();
    for (const auto& t : ticks) {
      const Point p = point_at(t.position);
      if (polar) {
        out.push_back(CircleCmd{c.x, c.y, std::hypot(p.x - c.x, p.y - c.y), grid_stroke()});
      } else {
        out.push_back(polyline_path({{fr.inner_x(), p.y}, {fr.inner_x() + fr.inner_width(), p.y}}, grid_stroke()));
      }
    }
  }
  out.push_back(polyline_path({g.low, g.high}, axis_stroke()));
  for (const auto& t : ticks) {
    const Point p = point_at(t.position);
    const Point end = add(p, outward, defaults::kTickLength);
    out.push_back(polyline_path({p, end}, axis_stroke()));
    out.push_back(tick_label(end, outward, t.label, axis.text));
  }
  title_at(out, axis, g.low, g.high, outward, polar ? TitleMode::Radial : TitleMode::Center);
  return out;
}

}  // namespace

Commands render_axis(const AxisSpec& axis, const ResolvedScale* scale, const CoordSystem& coords, std::size_t index) {
  if (!scale) fail(ErrorCode::UnlinkedScale, "axis has no resolved scale");
  if (!scale->numeric_output()) {
    fail(ErrorCode::IllegalLink, "scale '" + scale->name() + "' does not produce positions");
  }
  if (is_parallel(coords.kind())) return parallel_axis(axis, *scale, coords, index);
  if (coords.polar()) return polar_axis(axis, *scale, coords);
  return cartesian_axis(axis, *scale, coords);
}

// ---------------------------------------------------------------------------
// Legends

std::vector<std::string> quantile_labels(const ResolvedScale& scale) {
  const auto& t = scale.thresholds();
  std::vector<std::string> out;
  if (t.empty()) {
    const auto& s = scale.domain().sample;
    out.push_back("[" + format_label(s.front()) + ", " + format_label(s.back()) + "]");
    return out;
  }
  out.push_back("< " + format_label(t.front()));
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    out.push_back("[" + format_label(t[i]) + ", " + format_label(t[i + 1]) + ")");
  }
  out.push_back(">= " + format_label(t.back()));
  return out;
}

Commands render_legend(const GuideSpec& guide, const ResolvedScale& scale, const PlotFrame& frame) {
  if (scale.continuous_range()) {
    fail(ErrorCode::ContinuousRangeUnsupported, "legend for scale '" + scale.name() + "' needs a discrete range");
  }
  std::vector<std::string> labels;
  std::vector<ScaleOutput> swatches;
  const auto& range = scale.range_list();
  if (scale.kind() == ScaleKind::Ordinal) {
    const auto& cats = scale.domain().categories;
    for (std::size_t i = 0; i < cats.size(); ++i) {
      labels.push_back(display(cats[i]));
      swatches.push_back(range[i % range.size()]);
    }
  } else if (scale.kind() == ScaleKind::Quantile) {
    labels = quantile_labels(scale);
    swatches.assign(range.begin(), range.end());
  } else {
    fail(ErrorCode::ContinuousRangeUnsupported, "legend for scale '" + scale.name() + "' needs discrete buckets");
  }

  const LegendPosition pos =
      guide.position.value_or(LegendPosition{frame.inner_x() + frame.inner_width() + 10.0, frame.padding});
  const double box = 10.0, row = 16.0;
  Commands out;
  out.push_back(label({pos.x, pos.y + 10.0}, guide.title.empty() ? scale.name() : guide.title,
                      std::string(defaults::kTitleFont), std::string(defaults::kTextColor), TextAnchor::Start));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double top = pos.y + row + static_cast<double>(i) * row;
    const Point center{pos.x + box / 2.0, top + box / 2.0};
    const ScaleOutput& s = swatches[i];
    if (const auto* d = std::get_if<double>(&s)) {
      Style st;
      st.fill = std::string(kPalette[0]);
      out.push_back(CircleCmd{center.x, center.y, std::max(0.0, *d / 2.0), st});
    } else if (auto color = normalize_color(std::get<std::string>(s))) {
      Style st;
      st.fill = *color;
      out.push_back(RectCmd{pos.x, top, box, box, st});
    } else {
      Style st;
      st.fill = std::string(defaults::kAxisColor);
      out.push_back(symbol_path(std::get<std::string>(s), center, box, st));
    }
    out.push_back(label({pos.x + box + 6.0, top + 9.0}, labels[i], guide.font, std::string(defaults::kTextColor),
                        TextAnchor::Start));
  }
  return out;
}

}  // namespace gogc
