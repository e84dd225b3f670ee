#include "gogc/scene.hpp"

#include <cmath>

#include "gogc/error.hpp"
#include "gogc/style.hpp"

namespace gogc {

std::size_t PathCmd::vertex_count() const {
  std::size_t n = 0;
  for (const auto& s : segments) n += s.op == PathSegment::Op::Close ? 0 : 1;
  return n;
}

std::size_t PathCmd::subpath_count() const {
  std::size_t n = 0;
  for (const auto& s : segments) n += s.op == PathSegment::Op::Move ? 1 : 0;
  return n;
}

namespace {

std::optional<std::string> check_style(const Style& s) {
  if (s.fill && !is_hex_color(*s.fill)) return "fill '" + *s.fill + "' is not #rrggbb";
  if (s.stroke && !is_hex_color(*s.stroke)) return "stroke '" + *s.stroke + "' is not #rrggbb";
  if (!std::isfinite(s.stroke_width) || s.stroke_width < 0.0) return "bad stroke width";
  if (!std::isfinite(s.opacity) || s.opacity < 0.0 || s.opacity > 1.0) return "opacity outside [0, 1]";
  return std::nullopt;
}

bool finite(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> validate_command(const RenderCommand& cmd) {
  return std::visit(
      [](const auto& c) -> std::optional<std::string> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CircleCmd>) {
          if (!finite({c.cx, c.cy, c.r}) || c.r < 0.0) return "circle has non-finite geometry";
          return check_style(c.style);
        } else if constexpr (std::is_same_v<T, RectCmd>) {
          if (!finite({c.x, c.y, c.w, c.h}) || c.w < 0.0 || c.h < 0.0) return "rect has invalid geometry";
          return check_style(c.style);
        } else if constexpr (std::is_same_v<T, PathCmd>) {
          if (c.segments.empty() || c.segments.front().op != PathSegment::Op::Move) {
            return "path must start with a move";
          }
          for (const auto& s : c.segments) {
            if (!finite({s.x, s.y, s.radius})) return "path has non-finite coordinates";
          }
          return check_style(c.style);
        } else if constexpr (std::is_same_v<T, TextCmd>) {
          if (!finite({c.x, c.y})) return "text has non-finite position";
          return check_style(c.style);
        } else if constexpr (std::is_same_v<T, ImageCmd>) {
          if (!finite({c.x, c.y, c.w, c.h}) || c.w < 0.0 || c.h < 0.0) return "image has invalid geometry";
          return std::nullopt;
        } else {
          if (!finite({c.cx, c.cy, c.r0, c.r1, c.a0, c.a1})) return "arc has non-finite geometry";
          if (c.r0 < 0.0 || c.r1 < c.r0) return "arc radii must satisfy 0 <= r0 <= r1";
          if (c.a1 < c.a0 || c.a1 > c.a0 + kTwoPi + 1e-9) return "arc angles must satisfy a0 <= a1 <= a0 + 2pi";
          return check_style(c.style);
        }
      },
      cmd);
}

PathCmd polyline_path(const std::vector<Point>& pts, Style style, bool closed) {
  PathCmd p;
  p.style = std::move(style);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    p.segments.push_back({i == 0 ? PathSegment::Op::Move : PathSegment::Op::Line, pts[i].x, pts[i].y});
  }
  if (closed && !pts.empty()) p.segments.push_back({PathSegment::Op::Close});
  return p;
}

PathCmd symbol_path(std::string_view shape, Point c, double size, Style style) {
  const double h = size / 2.0;
  if (shape == "circle") {
    PathCmd p;
    p.style = std::move(style);
    PathSegment arc{PathSegment::Op::Arc, c.x + h, c.y, h, false, true};
    p.segments = {{PathSegment::Op::Move, c.x - h, c.y}, arc, arc, {PathSegment::Op::Close}};
    p.segments[2].x = c.x - h;
    return p;
  }
  if (shape == "square") {
    return polyline_path({{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}},
                         std::move(style), true);
  }
  if (shape == "triangle") {
    return polyline_path({{c.x, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}}, std::move(style), true);
  }
  if (shape == "diamond") {
    return polyline_path({{c.x, c.y - h}, {c.x + h, c.y}, {c.x, c.y + h}, {c.x - h, c.y}}, std::move(style), true);
  }
  if (shape == "cross") {
    const double t = size / 6.0;  // half arm thickness
    return polyline_path({{c.x - t, c.y - h}, {c.x + t, c.y - h}, {c.x + t, c.y - t}, {c.x + h, c.y - t},
                          {c.x + h, c.y + t}, {c.x + t, c.y + t}, {c.x + t, c.y + h}, {c.x - t, c.y + h},
                          {c.x - t, c.y + t}, {c.x - h, c.y + t}, {c.x - h, c.y - t}, {c.x - t, c.y - t}},
                         std::move(style), true);
  }
  fail(ErrorCode::UnknownShape, "'" + std::string(shape) + "'");
}

}  // namespace gogc
