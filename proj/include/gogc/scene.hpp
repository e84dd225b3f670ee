#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gogc/coords.hpp"

namespace gogc {

// Colors are "#rrggbb"; nullopt paints nothing ("none").
struct Style {
  std::optional<std::string> fill;
  std::optional<std::string> stroke;
  double stroke_width = 1.0;
  double opacity = 1.0;

  bool operator==(const Style&) const = default;
};

struct CircleCmd {
  double cx = 0.0, cy = 0.0, r = 0.0;
  Style style;
  bool operator==(const CircleCmd&) const = default;
};

struct RectCmd {
  double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
  Style style;
  bool operator==(const RectCmd&) const = default;
};

struct PathSegment {
  enum class Op { Move, Line, Arc, Close } op = Op::Move;
  double x = 0.0, y = 0.0;
  // Arc only: circular radius and flags.
  double radius = 0.0;
  bool large_arc = false;
  bool sweep = true;
  bool operator==(const PathSegment&) const = default;
};

struct PathCmd {
  std::vector<PathSegment> segments;
  Style style;
  bool operator==(const PathCmd&) const = default;

  std::size_t vertex_count() const;
  std::size_t subpath_count() const;
};

enum class TextAnchor { Start, Middle, End };

struct TextCmd {
  double x = 0.0, y = 0.0;
  std::string content;
  std::string font;
  TextAnchor anchor = TextAnchor::Middle;
  Style style;
  bool operator==(const TextCmd&) const = default;
};

// 3x3 grid of grey values, row-major, 0 black to 255 white.
struct ImageCmd {
  double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
  std::array<std::uint8_t, 9> grey{};
  bool operator==(const ImageCmd&) const = default;
};

// Annular sector between radii r0 <= r1, angles clockwise from 12 o'clock
// with a0 <= a1 <= a0 + 2*pi.
struct ArcCmd {
  double cx = 0.0, cy = 0.0, r0 = 0.0, r1 = 0.0, a0 = 0.0, a1 = 0.0;
  Style style;
  bool operator==(const ArcCmd&) const = default;
};

using RenderCommand = std::variant<CircleCmd, RectCmd, PathCmd, TextCmd, ImageCmd, ArcCmd>;

struct SceneGraph {
  double width = 600.0;
  double height = 400.0;
  std::vector<RenderCommand> commands;

  bool operator==(const SceneGraph&) const = default;
};

// Checks the command invariants (finite coordinates, #rrggbb colors, arc
// angle order). Returns a description of the first violation.
std::optional<std::string> validate_command(const RenderCommand& cmd);

// Path helpers.
PathCmd polyline_path(const std::vector<Point>& pts, Style style, bool closed = false);
// Symbol inscribed in a size x size box centered on `center`. Throws UnknownShape.
PathCmd symbol_path(std::string_view shape, Point center, double size, Style style);

}  // namespace gogc
