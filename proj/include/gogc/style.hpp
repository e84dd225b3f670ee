#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace gogc {

// Categorical palette used whenever a color is not given.
inline constexpr std::array<std::string_view, 10> kPalette = {
    "#4c78a8", "#f58518", "#e45756", "#72b7b2", "#54a24b",
    "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac",
};

// Symbols in registry order; ordinal shape scales without an explicit range
// draw from this list.
inline constexpr std::array<std::string_view, 5> kShapes = {"circle", "square", "triangle", "cross", "diamond"};

bool is_shape(std::string_view name);

// "#rgb", "#rrggbb" (any case) or a basic CSS color name, surrounding blanks
// ignored. Returns lowercase "#rrggbb".
std::optional<std::string> normalize_color(std::string_view text);
bool is_hex_color(std::string_view text);

// Tick and legend labels: at most 6 significant digits, trailing zeros
// dropped, scientific notation for |v| >= 1e6 or 0 < |v| < 1e-4.
std::string format_label(double v);

// Coordinates in SVG output: exactly two decimals, half-up rounding.
std::string format_fixed2(double v);

namespace defaults {
inline constexpr double kWidth = 600.0;
inline constexpr double kHeight = 400.0;
inline constexpr double kPadding = 40.0;
inline constexpr double kPointRadius = 3.0;
inline constexpr double kSymbolSize = 6.0;
inline constexpr double kBandFill = 0.8;
inline constexpr int kTicks = 5;
inline constexpr double kTickLength = 4.0;
inline constexpr double kPolarParallelInset = 0.1;
inline constexpr double kPolarInset = 0.0;
inline constexpr double kStrokeWidth = 1.0;
inline constexpr double kGlyphSize = 12.0;
inline constexpr std::string_view kFont = "10px sans-serif";
inline constexpr std::string_view kTitleFont = "11px sans-serif";
inline constexpr std::string_view kTextColor = "#000000";
inline constexpr std::string_view kAxisColor = "#333333";
inline constexpr std::string_view kGridColor = "#dddddd";
}  // namespace defaults

}  // namespace gogc
