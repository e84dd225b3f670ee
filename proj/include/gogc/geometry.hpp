#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gogc/coords.hpp"
#include "gogc/datastore.hpp"
#include "gogc/diagnostic.hpp"
#include "gogc/scales.hpp"
#include "gogc/scene.hpp"
#include "gogc/style.hpp"
#include "gogc/transform.hpp"

namespace gogc {

enum class MarkKind { Point, Line, Area, Bar, VerticalBar, StackedBar, Histogram, Arc, HLine, VLine, Text, Picture, Marks };

std::string_view to_string(MarkKind k);
// Case-insensitive; accepts "pie" and "donut" for arc, "symbol" for marks.
std::optional<MarkKind> mark_kind_from(std::string_view name);

// A visual channel fed by a constant, a raw field, or a field passed through
// a scale. A scale without a field maps values the mark computes itself
// (histogram counts).
struct Channel {
  std::optional<ScaleOutput> constant;
  std::optional<std::string> field;
  std::shared_ptr<const ResolvedScale> scale;

  static Channel of_constant(ScaleOutput v) { return Channel{std::move(v), std::nullopt, nullptr}; }
  static Channel of_field(std::string f) { return Channel{std::nullopt, std::move(f), nullptr}; }
  static Channel of_scale(std::shared_ptr<const ResolvedScale> s, std::optional<std::string> f) {
    return Channel{std::nullopt, std::move(f), std::move(s)};
  }
};

using Bindings = std::map<std::string, Channel>;

// Settings that are not per-row channels.
struct MarkParams {
  std::string font = std::string(defaults::kFont);
  TextAnchor anchor = TextAnchor::Middle;
  std::optional<std::string> group;  // stacked bars, grouped lines
  std::optional<std::size_t> bins;   // histogram
  double band_fill = defaults::kBandFill;
  double radius = defaults::kPointRadius;
  double symbol_size = defaults::kSymbolSize;
  double stroke_width = defaults::kStrokeWidth;
  double opacity = 1.0;
};

using Commands = std::vector<RenderCommand>;

Commands geom_point(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                    const MarkParams& params = {}, Warnings* warnings = nullptr);
Commands geom_line(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                   const MarkParams& params = {}, Warnings* warnings = nullptr);
Commands geom_area(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                   const MarkParams& params = {}, Warnings* warnings = nullptr);

enum class BarVariant { Bar, Vertical, Stacked, Histogram };

// Histogram bin edges over [min, max] with `bins` equal-width bins (Sturges'
// ceil(log2 n) + 1 when unset); the last bin is closed on the right.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};
Histogram histogram_bins(std::span<const double> values, std::optional<std::size_t> bins = std::nullopt);
std::size_t sturges_bins(std::size_t n);

Commands geom_bar(const DataTable& rows, const Bindings& b, const CoordSystem& coords, BarVariant variant,
                  const MarkParams& params = {}, Warnings* warnings = nullptr);

// Slices run clockwise from 12 o'clock in row order, centered in the frame.
Commands geom_arc(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                  const MarkParams& params = {}, Warnings* warnings = nullptr);

enum class RuleOrientation { Horizontal, Vertical };
// `rows` may be null when the position channel is a constant.
Commands geom_rule(const DataTable* rows, const Bindings& b, const CoordSystem& coords, RuleOrientation orientation,
                   const MarkParams& params = {}, Warnings* warnings = nullptr);

Commands geom_text(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                   const MarkParams& params = {}, Warnings* warnings = nullptr);

// x and y channels map the glyph coordinates; each glyph becomes a 12x12
// image of 3x3 blocks.
Commands geom_picture(const std::vector<NestGlyph>& glyphs, const Bindings& b, const CoordSystem& coords,
                      const MarkParams& params = {});
std::uint8_t grey_byte(double level);

Commands geom_marks(const DataTable& rows, const Bindings& b, const CoordSystem& coords,
                    const MarkParams& params = {}, Warnings* warnings = nullptr);

// Parallel coordinates: one polyline (or vertex circles for points) per
// record with a complete fraction vector. Row i of `rows` styles record i.
Commands geom_parallel(const DataTable& rows, const std::vector<std::optional<std::vector<double>>>& fractions,
                       const Bindings& b, const CoordSystem& coords, MarkKind kind, const MarkParams& params = {},
                       Warnings* warnings = nullptr);

}  // namespace gogc
