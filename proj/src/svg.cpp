#include "gogc/svg.hpp"

#include <cmath>
#include <cstdio>

#include "gogc/error.hpp"
#include "gogc/style.hpp"

namespace gogc {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string num(double v) { return format_fixed2(v); }

std::string attr(const char* name, const std::string& value) {
  return std::string(" ") + name + "=\"" + value + "\"";
}

std::string style_attrs(const Style& s) {
  std::string out = attr("fill", s.fill.value_or("none"));
  if (s.stroke) {
    out += attr("stroke", *s.stroke);
    out += attr("stroke-width", num(s.stroke_width));
  }
  if (s.opacity != 1.0) out += attr("opacity", num(s.opacity));
  return out;
}

std::string path_data(const PathCmd& p) {
  std::string d;
  for (const auto& s : p.segments) {
    if (!d.empty()) d.push_back(' ');
    switch (s.op) {
      case PathSegment::Op::Move: d += "M" + num(s.x) + " " + num(s.y); break;
      case PathSegment::Op::Line: d += "L" + num(s.x) + " " + num(s.y); break;
      case PathSegment::Op::Arc:
        d += "A" + num(s.radius) + " " + num(s.radius) + " 0 " + (s.large_arc ? "1" : "0") + " " +
             (s.sweep ? "1" : "0") + " " + num(s.x) + " " + num(s.y);
        break;
      case PathSegment::Op::Close: d += "Z"; break;
    }
  }
  return d;
}

std::string arc_data(const ArcCmd& a) {
  const Point c{a.cx, a.cy};
  auto at = [&](double angle, double r) { return polar_point(c, angle, r); };
  auto pt = [](Point p) { return num(p.x) + " " + num(p.y); };
  auto arc_to = [&](double r, bool large, bool sweep, Point p) {
    return "A" + num(r) + " " + num(r) + " 0 " + (large ? "1" : "0") + " " + (sweep ? "1" : "0") + " " + pt(p);
  };
  const double span = a.a1 - a.a0;
  std::string d;
  if (span >= kTwoPi - 1e-9) {
    // A full turn is two half arcs; the inner ring runs backwards to cut a hole.
    const double mid = a.a0 + kPi;
    d = "M" + pt(at(a.a0, a.r1)) + " " + arc_to(a.r1, false, true, at(mid, a.r1)) + " " +
        arc_to(a.r1, false, true, at(a.a0, a.r1)) + " Z";
    if (a.r0 > 0.0) {
      d += " M" + pt(at(a.a0, a.r0)) + " " + arc_to(a.r0, false, false, at(mid, a.r0)) + " " +
           arc_to(a.r0, false, false, at(a.a0, a.r0)) + " Z";
    }
    return d;
  }
  const bool large = span > kPi;
  if (a.r0 > 0.0) {
    d = "M" + pt(at(a.a0, a.r1)) + " " + arc_to(a.r1, large, true, at(a.a1, a.r1)) + " L" + pt(at(a.a1, a.r0)) +
        " " + arc_to(a.r0, large, false, at(a.a0, a.r0)) + " Z";
  } else {
    d = "M" + pt(c) + " L" + pt(at(a.a0, a.r1)) + " " + arc_to(a.r1, large, true, at(a.a1, a.r1)) + " Z";
  }
  return d;
}

const char* anchor_name(TextAnchor a) {
  switch (a) {
    case TextAnchor::Start: return "start";
    case TextAnchor::Middle: return "middle";
    case TextAnchor::End: return "end";
  }
  return "middle";
}

std::string grey_hex(std::uint8_t g) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", g, g, g);
  return buf;
}

std::string element(const RenderCommand& cmd) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CircleCmd>) {
          return "<circle" + attr("cx", num(c.cx)) + attr("cy", num(c.cy)) + attr("r", num(c.r)) +
                 style_attrs(c.style) + "/>";
        } else if constexpr (std::is_same_v<T, RectCmd>) {
          return "<rect" + attr("x", num(c.x)) + attr("y", num(c.y)) + attr("width", num(c.w)) +
                 attr("height", num(c.h)) + style_attrs(c.style) + "/>";
        } else if constexpr (std::is_same_v<T, PathCmd>) {
          return "<path" + attr("d", path_data(c)) + style_attrs(c.style) + "/>";
        } else if constexpr (std::is_same_v<T, TextCmd>) {
          return "<text" + attr("x", num(c.x)) + attr("y", num(c.y)) + attr("style", "font: " + xml_escape(c.font)) +
                 attr("text-anchor", anchor_name(c.anchor)) + style_attrs(c.style) + ">" + xml_escape(c.content) +
                 "</text>";
        } else if constexpr (std::is_same_v<T, ImageCmd>) {
          std::string out = "<g>";
          const double bw = c.w / 3.0, bh = c.h / 3.0;
          for (std::size_t i = 0; i < 9; ++i) {
            const double x = c.x + bw * static_cast<double>(i % 3);
            const double y = c.y + bh * static_cast<double>(i / 3);
            out += "<rect" + attr("x", num(x)) + attr("y", num(y)) + attr("width", num(bw)) +
                   attr("height", num(bh)) + attr("fill", grey_hex(c.grey[i])) + "/>";
          }
          return out + "</g>";
        } else {
          return "<path" + attr("d", arc_data(c)) + style_attrs(c.style) + "/>";
        }
      },
      cmd);
}

}  // namespace

std::string emit_svg(const SceneGraph& scene) {
  if (!std::isfinite(scene.width) || !std::isfinite(scene.height) || scene.width <= 0.0 || scene.height <= 0.0) {
    fail(ErrorCode::InvalidCommand, "scene size must be positive");
  }
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"" + attr("width", num(scene.width)) +
         attr("height", num(scene.height)) +
         attr("viewBox", "0 0 " + num(scene.width) + " " + num(scene.height)) + ">\n";
  for (std::size_t i = 0; i < scene.commands.size(); ++i) {
    if (auto problem = validate_command(scene.commands[i])) {
      fail(ErrorCode::InvalidCommand, "command " + std::to_string(i) + ": " + *problem);
    }
    out += element(scene.commands[i]);
    out.push_back('\n');
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gogc
