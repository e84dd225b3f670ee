#include "gogc/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "gogc/error.hpp"

namespace gogc {

std::string_view to_string(MarkKind k) {
  switch (k) {
    case MarkKind::Point: return "point";
    case MarkKind::Line: return "line";
    case MarkKind::Area: return "area";
    case MarkKind::Bar: return "bar";
    case MarkKind::VerticalBar: return "vertical_bar";
    case MarkKind::StackedBar: return "stacked_bar";
    case MarkKind::Histogram: return "histogram";
    case MarkKind::Arc: return "arc";
    case MarkKind::HLine: return "hline";
    case MarkKind::VLine: return "vline";
    case MarkKind::Text: return "text";
    case MarkKind::Picture: return "picture";
    case MarkKind::Marks: return "marks";
  }
  return "point";
}

std::optional<MarkKind> mark_kind_from(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static const std::map<std::string, MarkKind, std::less<>> kNames = {
      {"point", MarkKind::Point},         {"line", MarkKind::Line},
      {"area", MarkKind::Area},           {"bar", MarkKind::Bar},
      {"vertical_bar", MarkKind::VerticalBar}, {"stacked_bar", MarkKind::StackedBar},
      {"histogram", MarkKind::Histogram}, {"arc", MarkKind::Arc},
      {"pie", MarkKind::Arc},             {"donut", MarkKind::Arc},
      {"hline", MarkKind::HLine},         {"vline", MarkKind::VLine},
      {"text", MarkKind::Text},           {"picture", MarkKind::Picture},
      {"marks", MarkKind::Marks},         {"symbol", MarkKind::Marks},
  };
  if (auto it = kNames.find(lower); it != kNames.end()) return it->second;
  return std::nullopt;
}

namespace {

// Resolves channel fields against one table and reads per-row values.
class RowReader {
 public:
  RowReader(const DataTable* table, const Bindings& b) : table_(table), b_(b) {
    for (const auto& [name, ch] : b_) {
      if (ch.field && table_) columns_[name] = table_->column_index(*ch.field);
    }
  }

  bool bound(const std::string& name) const { return b_.count(name) != 0; }
  const Channel* channel(const std::string& name) const {
    auto it = b_.find(name);
    return it == b_.end() ? nullptr : &it->second;
  }

  // nullopt for a null cell. Throws UnboundChannel when the channel is absent.
  std::optional<ScaleOutput> value(const std::string& name, std::size_t row) const {
    const Channel* ch = channel(name);
    if (!ch) fail(ErrorCode::UnboundChannel, "channel '" + name + "' is not bound");
    if (ch->constant) return ch->constant;
    if (!ch->field) {
      fail(ErrorCode::UnboundChannel, "channel '" + name + "' uses scale '" + ch->scale->name() + "' without a field");
    }
    if (!table_) fail(ErrorCode::UnboundChannel, "channel '" + name + "' reads a field but the mark has no data");
    const DataValue& cell = table_->at(row, columns_.at(name));
    if (is_null(cell)) return std::nullopt;
    if (ch->scale) return ch->scale->map(cell);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    return display(cell);
  }

  std::optional<double> number(const std::string& name, std::size_t row) const {
    auto v = value(name, row);
    if (!v) return std::nullopt;
    if (const auto* d = std::get_if<double>(&*v)) return *d;
    fail(ErrorCode::TypeMismatch, "channel '" + name + "' needs a number, got '" + std::get<std::string>(*v) + "'");
  }

  std::optional<double> number_or(const std::string& name, std::size_t row, double fallback) const {
    if (!bound(name)) return fallback;
    return number(name, row);
  }

  // Unbound or null colors fall back to `fallback`.
  std::string color(const std::string& name, std::size_t row, std::string_view fallback) const {
    if (!bound(name)) return std::string(fallback);
    auto v = value(name, row);
    if (!v) return std::string(fallback);
    if (const auto* s = std::get_if<std::string>(&*v)) {
      if (auto c = normalize_color(*s)) return *c;
      fail(ErrorCode::BadProperties, "channel '" + name + "' produced '" + *s + "', which is not a color");
    }
    fail(ErrorCode::TypeMismatch, "channel '" + name + "' produced a number where a color is needed");
  }

 private:
  const DataTable* table_;
  const Bindings& b_;
  std::map<std::string, std::size_t> columns_;
};

void require(const RowReader& r, std::initializer_list<const char*> names, MarkKind kind) {
  for (const char* n : names) {
    if (!r.bound(n)) fail(ErrorCode::UnboundChannel, std::string(to_string(kind)) + " needs channel '" + n + "'");
  }
}

void warn_skipped(Warnings* w, MarkKind kind, std::size_t skipped, std::size_t first) {
  if (w && skipped > 0) {
    w->push_back(std::string(to_string(kind)) + ": skipped " + std::to_string(skipped) +
                 " row(s) with null channel values (first at row " + std::to_string(first) + ")");
  }
}

struct SkipCounter {
  std::size_t count = 0;
  std::size_t first = 0;
  void add(std::size_t row) {
    if (count++ == 0) first = row;
  }
};

Style fill_style(std::string fill, const MarkParams& p) {
  Style s;
  s.fill = std::move(fill);
  s.opacity = p.opacity;
  return s;
}

Style stroke_style(std::string stroke, const MarkParams& p) {
  Style s;
  s.stroke = std::move(stroke);
  s.stroke_width = p.stroke_width;
  s.opacity = p.opacity;
  return s;
}

const std::string kDefaultColor(kPalette[0]);

// Where a quantitative channel puts the value zero; log scales start at the
// low end of their range.
double baseline(const Channel* ch) {
  if (!ch || !ch->scale) return 0.0;
  const ResolvedScale& s = *ch->scale;
  if (!s.continuous_range()) return 0.0;
  if (s.kind() == ScaleKind::Log || s.kind() == ScaleKind::Ordinal) return s.range_pair().lo;
  return s.map_number(number_value(0.0));
}

// Axis-aligned region of range space as a canvas rect, or a sector in polar
// coordinates.
RenderCommand region(const CoordSystem& coords, double u0, double u1, double v0, double v1, Style style) {
  if (u0 > u1) std::swap(u0, u1);
  if (v0 > v1) std::swap(v0, v1);
  if (coords.polar()) {
    ArcCmd a;
    const Point c = coords.frame().center();
    a.cx = c.x;
    a.cy = c.y;
    a.a0 = coords.angle_of(u0);
    a.a1 = std::min(coords.angle_of(u1), a.a0 + kTwoPi);
    a.r0 = std::max(0.0, coords.radius_of(v0));
    a.r1 = std::max(a.r0, coords.radius_of(v1));
    a.style = std::move(style);
    return a;
  }
  const Point p = coords.project(u0, v0);
  const Point q = coords.project(u1, v1);
  RectCmd r;
  r.x = std::min(p.x, q.x);
  r.y = std::min(p.y, q.y);
  r.w = std::fabs(q.x - p.x);
  r.h = std::fabs(q.y - p.y);
  r.style = std::move(style);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

Commands geom_point(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                    Warnings* warnings) {
  RowReader r(&rows, b);
  require(r, {"x", "y"}, MarkKind::Point);
  Commands out;
  SkipCounter skipped;
  for (std::size_t i = 0; i < rows.row_count(); ++i) {
    auto u = r.number("x", i);
    auto v = r.number("y", i);
    auto size = r.number_or("size", i, params.radius);
    if (!u || !v || !size) {
      skipped.add(i);
      continue;
    }
    const Point p = coords.project(*u, *v);
    out.push_back(CircleCmd{p.x, p.y, *size, fill_style(r.color("fillColor", i, kDefaultColor), params)});
  }
  warn_skipped(warnings, MarkKind::Point, skipped.count, skipped.first);
  return out;
}

Commands geom_line(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                   Warnings* warnings) {
  RowReader r(&rows, b);
  require(r, {"x", "y"}, MarkKind::Line);

  // Rows split by the optional group field, groups in first-occurrence order.
  std::vector<std::vector<std::size_t>> groups;
  if (params.group) {
    const std::size_t gc = rows.column_index(*params.group);
    std::map<DataValue, std::size_t> index;
    for (std::size_t i = 0; i < rows.row_count(); ++i) {
      auto [it, inserted] = index.emplace(rows.at(i, gc), groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
  } else {
    groups.emplace_back();
    for (std::size_t i = 0; i < rows.row_count(); ++i) groups.back().push_back(i);
  }

  Commands out;
  std::size_t dropped = 0;
  for (const auto& members : groups) {
    if (members.empty()) continue;
    PathCmd path;
    path.style = stroke_style(r.color("strokeColor", members.front(), kDefaultColor), params);
    std::vector<Point> run;
    auto flush = [&] {
      if (run.size() >= 2) {
        for (std::size_t k = 0; k < run.size(); ++k) {
          path.segments.push_back({k == 0 ? PathSegment::Op::Move : PathSegment::Op::Line, run[k].x, run[k].y});
        }
      } else if (!run.empty()) {
        ++dropped;
      }
      run.clear();
    };
    for (std::size_t i : members) {
      auto u = r.number("x", i);
      auto v = r.number("y", i);
      if (!u || !v) {
        flush();
        continue;
      }
      run.push_back(coords.project(*u, *v));
    }
    flush();
    if (!path.segments.empty()) out.push_back(std::move(path));
  }
  if (warnings && dropped > 0) {
    warnings->push_back("line: dropped " + std::to_string(dropped) + " single-point segment(s)");
  }
  return out;
}

Commands geom_area(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                   Warnings* warnings) {
  RowReader r(&rows, b);
  require(r, {"x", "y"}, MarkKind::Area);
  const double base = baseline(r.channel("y"));
  std::vector<Point> upper, lower;
  SkipCounter skipped;
  std::optional<std::size_t> first_row;
  for (std::size_t i = 0; i < rows.row_count(); ++i) {
    auto u = r.number("x", i);
    auto v = r.number("y", i);
    auto v2 = r.number_or("y2", i, base);
    if (!u || !v || !v2) {
      skipped.add(i);
      continue;
    }
    if (!first_row) first_row = i;
    upper.push_back(coords.project(*u, *v));
    lower.push_back(coords.project(*u, *v2));
  }
  warn_skipped(warnings, MarkKind::Area, skipped.count, skipped.first);
  if (upper.size() < 2) {
    if (warnings) warnings->push_back("area: fewer than two complete rows, nothing drawn");
    return {};
  }
  std::vector<Point> outline = upper;
  outline.insert(outline.end(), lower.rbegin(), lower.rend());
  return {polyline_path(outline, fill_style(r.color("fillColor", *first_row, kDefaultColor), params), true)};
}

// ---------------------------------------------------------------------------
// Bars

std::size_t sturges_bins(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

Histogram histogram_bins(std::span<const double> values, std::optional<std::size_t> bins) {
  Histogram h;
  if (values.empty()) return h;
  const std::size_t k = std::max<std::size_t>(1, bins.value_or(sturges_bins(values.size())));
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(k);
  for (std::size_t i = 0; i <= k; ++i) h.edges.push_back(i == k ? hi : lo + width * static_cast<double>(i));
  h.counts.assign(k, 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>(std::floor((v - lo) / width));
    h.counts[std::min(idx, k - 1)]++;
  }
  return h;
}

namespace {

bool ordinal_band(const Channel* ch) {
  return ch && ch->scale && ch->scale->kind() == ScaleKind::Ordinal && ch->scale->continuous_range();
}

Commands histogram(const DataTable& rows, const RowReader& r, const CoordSystem& coords, const MarkParams& params,
                   Warnings* warnings) {
  require(r, {"x"}, MarkKind::Histogram);
  const Channel* xc = r.channel("x");
  if (!xc->field) fail(ErrorCode::UnboundChannel, "histogram needs a field on channel 'x'");
  std::vector<double> values = rows.numeric_values(*xc->field);
  if (values.empty()) {
    if (warnings) warnings->push_back("histogram: no non-null values");
    return {};
  }
  const Histogram h = histogram_bins(values, params.bins);

  auto map_x = [&](double v) {
    if (xc->scale) return xc->scale->map_number(number_value(v));
    return scale_linear({h.edges.front(), h.edges.back()}, {0.0, coords.u_extent()}, v);
  };
  const Channel* yc = r.channel("y");
  const double max_count = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
  auto map_y = [&](double count) {
    if (yc && yc->scale) return yc->scale->map_number(number_value(count));
    return scale_linear({0.0, max_count}, {0.0, coords.v_extent()}, count);
  };

  Commands out;
  const double base = map_y(0.0);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out.push_back(region(coords, map_x(h.edges[i]), map_x(h.edges[i + 1]), base,
                         map_y(static_cast<double>(h.counts[i])),
                         fill_style(r.color("fillColor", 0, kDefaultColor), params)));
  }
  return out;
}

}  // namespace

Commands geom_bar(const DataTable& rows, const Bindings& b, const CoordSystem& coords, BarVariant variant,
                  const MarkParams& params, Warnings* warnings) {
  RowReader r(&rows, b);
  if (variant == BarVariant::Histogram) return histogram(rows, r, coords, params, warnings);

  const MarkKind kind = variant == BarVariant::Stacked ? MarkKind::StackedBar
                        : variant == BarVariant::Vertical ? MarkKind::VerticalBar
                                                          : MarkKind::Bar;
  require(r, {"x", "y"}, kind);
  // The category channel carries an ordinal band scale; bars grow along the other.
  bool vertical = true;
  if (!ordinal_band(r.channel("x"))) {
    if (variant == BarVariant::Bar && ordinal_band(r.channel("y"))) {
      vertical = false;
    } else {
      fail(ErrorCode::IllegalLink, std::string(to_string(kind)) +
                                       " needs an ordinal scale with a continuous range on channel 'x'");
    }
  }
  const std::string cat_ch = vertical ? "x" : "y";
  const std::string val_ch = vertical ? "y" : "x";
  const ResolvedScale& band_scale = *r.channel(cat_ch)->scale;
  const double half = band_scale.band_width() * params.band_fill / 2.0;
  const Channel* value_channel = r.channel(val_ch);
  const double base = baseline(value_channel);

  auto emit = [&](double center, double from, double to, Style style) {
    return vertical ? region(coords, center - half, center + half, from, to, std::move(style))
                    : region(coords, from, to, center - half, center + half, std::move(style));
  };

  Commands out;
  SkipCounter skipped;
  if (variant != BarVariant::Stacked) {
    for (std::size_t i = 0; i < rows.row_count(); ++i) {
      auto c = r.number(cat_ch, i);
      auto v = r.number(val_ch, i);
      if (!c || !v) {
        skipped.add(i);
        continue;
      }
      out.push_back(emit(*c, base, *v, fill_style(r.color("fillColor", i, kDefaultColor), params)));
    }
    warn_skipped(warnings, kind, skipped.count, skipped.first);
    return out;
  }

  if (!params.group) fail(ErrorCode::UnboundChannel, "stacked_bar needs a 'group' field");
  if (!value_channel->field) fail(ErrorCode::UnboundChannel, "stacked_bar needs a field on channel 'y'");
  const std::size_t gc = rows.column_index(*params.group);
  const std::size_t cc = rows.column_index(*r.channel(cat_ch)->field);
  const std::size_t vc = rows.column_index(*value_channel->field);
  rows.numeric_values(*value_channel->field);

  std::map<DataValue, std::size_t> group_rank;
  for (std::size_t i = 0; i < rows.row_count(); ++i) group_rank.emplace(rows.at(i, gc), group_rank.size());

  for (const DataValue& category : band_scale.domain().categories) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < rows.row_count(); ++i) {
      if (rows.at(i, cc) == category) members.push_back(i);
    }
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b2) {
      return group_rank.at(rows.at(a, gc)) < group_rank.at(rows.at(b2, gc));
    });
    const double center = band_scale.map_number(category);
    double sum = 0.0;
    for (std::size_t i : members) {
      const DataValue& cell = rows.at(i, vc);
      if (is_null(cell)) {
        skipped.add(i);
        continue;
      }
      const double v = std::get<double>(cell);
      if (v < 0.0) fail(ErrorCode::NegativeStackValue, "row " + std::to_string(i) + " has value " + display(cell));
      auto mapped = [&](double t) { return value_channel->scale ? value_channel->scale->map_number(number_value(t)) : t; };
      const double top = sum + v;
      const double from = sum == 0.0 ? base : mapped(sum);
      out.push_back(emit(center, from, mapped(top), fill_style(r.color("fillColor", i, kDefaultColor), params)));
      sum = top;
    }
  }
  warn_skipped(warnings, kind, skipped.count, skipped.first);
  return out;
}

// ---------------------------------------------------------------------------

Commands geom_arc(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                  Warnings* warnings) {
  RowReader r(&rows, b);
  const Channel* outer_ch = r.channel("outerRadius");
  const bool equal_slices = !r.bound("theta") && outer_ch && !outer_ch->constant;
  if (!r.bound("theta") && !equal_slices) {
    fail(ErrorCode::UnboundChannel, "arc needs channel 'theta' or a data-driven 'outerRadius'");
  }
  const double full_radius = coords.frame().polar_radius();

  struct Slice {
    std::size_t row;
    double share;
    double inner, outer;
  };
  std::vector<Slice> slices;
  SkipCounter skipped;
  for (std::size_t i = 0; i < rows.row_count(); ++i) {
    std::optional<double> share = equal_slices ? std::optional<double>(1.0) : r.number("theta", i);
    auto inner = r.number_or("innerRadius", i, 0.0);
    auto outer = r.number_or("outerRadius", i, full_radius);
    if (!share || !inner || !outer) {
      skipped.add(i);
      continue;
    }
    if (*share < 0.0) fail(ErrorCode::NegativeValue, "row " + std::to_string(i) + " has a negative arc value");
    if (*inner < 0.0 || *inner > *outer) {
      fail(ErrorCode::BadProperties, "row " + std::to_string(i) + " needs 0 <= innerRadius <= outerRadius");
    }
    slices.push_back({i, *share, *inner, *outer});
  }
  warn_skipped(warnings, MarkKind::Arc, skipped.count, skipped.first);
  double total = 0.0;
  for (const auto& s : slices) total += s.share;
  if (slices.empty() || total <= 0.0) fail(ErrorCode::ZeroTotal, "arc values sum to zero");

  const Point c = coords.frame().center();
  Commands out;
  double cumulative = 0.0;
  bool degenerate = false;
  for (const auto& s : slices) {
    ArcCmd a;
    a.cx = c.x;
    a.cy = c.y;
    a.r0 = s.inner;
    a.r1 = s.outer;
    a.a0 = kTwoPi * cumulative / total;
    cumulative += s.share;
    a.a1 = kTwoPi * cumulative / total;
    a.style = fill_style(r.color("fillColor", s.row, kDefaultColor), params);
    a.style.stroke = "#ffffff";
    degenerate |= s.inner == s.outer;
    out.push_back(a);
  }
  if (degenerate && warnings) warnings->push_back("arc: innerRadius equals outerRadius; ring has zero width");
  return out;
}

Commands geom_rule(const DataTable* rows, const Bindings& b, const CoordSystem& coords, RuleOrientation orientation,
                   const MarkParams& params, Warnings* warnings) {
  RowReader r(rows, b);
  const std::string ch = orientation == RuleOrientation::Horizontal ? "y" : "x";
  require(r, {ch.c_str()}, orientation == RuleOrientation::Horizontal ? MarkKind::HLine : MarkKind::VLine);
  const bool constant = r.channel(ch)->constant.has_value();
  const std::size_t n = rows ? rows->row_count() : 0;
  const std::size_t count = constant && n == 0 ? 1 : n;

  Commands out;
  SkipCounter skipped;
  for (std::size_t i = 0; i < count; ++i) {
    auto pos = r.number(ch, i);
    if (!pos) {
      skipped.add(i);
      continue;
    }
    Style style = stroke_style(r.color("strokeColor", i, kDefaultColor), params);
    if (coords.polar() && orientation == RuleOrientation::Horizontal) {
      const Point c = coords.frame().center();
      out.push_back(CircleCmd{c.x, c.y, coords.radius_of(*pos), style});
      continue;
    }
    const Point a = orientation == RuleOrientation::Horizontal ? coords.project(0.0, *pos) : coords.project(*pos, 0.0);
    const Point z = orientation == RuleOrientation::Horizontal ? coords.project(coords.u_extent(), *pos)
                                                               : coords.project(*pos, coords.v_extent());
    out.push_back(polyline_path({a, z}, style));
  }
  warn_skipped(warnings, orientation == RuleOrientation::Horizontal ? MarkKind::HLine : MarkKind::VLine,
               skipped.count, skipped.first);
  return out;
}

Commands geom_text(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                   Warnings* warnings) {
  RowReader r(&rows, b);
  require(r, {"x", "y", "text"}, MarkKind::Text);
  Commands out;
  SkipCounter skipped;
  for (std::size_t i = 0; i < rows.row_count(); ++i) {
    auto u = r.number("x", i);
    auto v = r.number("y", i);
    auto label = r.value("text", i);
    if (!u || !v || !label) {
      skipped.add(i);
      continue;
    }
    const Point p = coords.project(*u, *v);
    TextCmd t;
    t.x = p.x;
    t.y = p.y;
    if (const auto* d = std::get_if<double>(&*label)) {
      t.content = display(number_value(*d));
    } else {
      t.content = std::get<std::string>(*label);
    }
    t.font = params.font;
    t.anchor = params.anchor;
    t.style.fill = r.color("fillColor", i, defaults::kTextColor);
    t.style.opacity = params.opacity;
    out.push_back(std::move(t));
  }
  warn_skipped(warnings, MarkKind::Text, skipped.count, skipped.first);
  return out;
}

std::uint8_t grey_byte(double level) {
  const double v = std::floor(255.0 * (1.0 - std::clamp(level, 0.0, 1.0)) + 0.5);
  return static_cast<std::uint8_t>(v);
}

Commands geom_picture(const std::vector<NestGlyph>& glyphs, const Bindings& b, const CoordSystem& coords,
                      const MarkParams&) {
  RowReader r(nullptr, b);
  require(r, {"x", "y"}, MarkKind::Picture);
  auto map = [&](const std::string& name, double value) {
    const Channel* ch = r.channel(name);
    if (ch->scale) return ch->scale->map_number(number_value(value));
    return value;
  };
  const double size = defaults::kGlyphSize;
  Commands out;
  for (const auto& g : glyphs) {
    const Point p = coords.project(map("x", g.x), map("y", g.y));
    ImageCmd img;
    img.x = p.x - size / 2.0;
    img.y = p.y - size / 2.0;
    img.w = size;
    img.h = size;
    for (std::size_t i = 0; i < kGlyphBlocks; ++i) img.grey[i] = grey_byte(g.levels[i]);
    out.push_back(img);
  }
  return out;
}

Commands geom_marks(const DataTable& rows, const Bindings& b, const CoordSystem& coords, const MarkParams& params,
                    Warnings* warnings) {
  RowReader r(&rows, b);
  require(r, {"x", "y"}, MarkKind::Marks);
  Commands out;
  SkipCounter skipped;
  for (std::size_t i = 0; i < rows.row_count(); ++i) {
    auto u = r.number("x", i);
    auto v = r.number("y", i);
    auto size = r.number_or("size", i, params.symbol_size);
    std::string shape = "circle";
    if (r.bound("shape")) {
      auto s = r.value("shape", i);
      if (s) {
        if (const auto* name = std::get_if<std::string>(&*s)) {
          shape = *name;
        } else {
          fail(ErrorCode::UnknownShape, "shape channel produced a number");
        }
      }
    }
    if (!u || !v || !size) {
      skipped.add(i);
      continue;
    }
    out.push_back(symbol_path(shape, coords.project(*u, *v), *size,
                              fill_style(r.color("fillColor", i, kDefaultColor), params)));
  }
  warn_skipped(warnings, MarkKind::Marks, skipped.count, skipped.first);
  return out;
}

Commands geom_parallel(const DataTable& rows, const std::vector<std::optional<std::vector<double>>>& fractions,
                       const Bindings& b, const CoordSystem& coords, MarkKind kind, const MarkParams& params,
                       Warnings* warnings) {
  RowReader r(&rows, b);
  const auto axes = coords.parallel_axes();
  Commands out;
  SkipCounter skipped;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!fractions[i]) {
      skipped.add(i);
      continue;
    }
    std::vector<Point> pts = polyline_for_record(*fractions[i], axes, coords.kind());
    if (kind == MarkKind::Point) {
      if (coords.kind() == CoordKind::PolarParallel) pts.pop_back();
      const std::string fill = r.color("fillColor", i, kDefaultColor);
      for (const auto& p : pts) out.push_back(CircleCmd{p.x, p.y, params.radius, fill_style(fill, params)});
    } else {
      out.push_back(polyline_path(pts, stroke_style(r.color("strokeColor", i, kDefaultColor), params)));
    }
  }
  warn_skipped(warnings, kind, skipped.count, skipped.first);
  return out;
}

}  // namespace gogc
