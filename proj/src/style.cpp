#include "gogc/style.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace gogc {

bool is_shape(std::string_view name) {
  return std::find(kShapes.begin(), kShapes.end(), name) != kShapes.end();
}

bool is_hex_color(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

std::optional<std::string> normalize_color(std::string_view text) {
  static const std::map<std::string, std::string, std::less<>> kNamed = {
      {"black", "#000000"},  {"white", "#ffffff"},     {"red", "#ff0000"},   {"green", "#008000"},
      {"blue", "#0000ff"},   {"yellow", "#ffff00"},    {"orange", "#ffa500"}, {"purple", "#800080"},
      {"gray", "#808080"},   {"grey", "#808080"},      {"silver", "#c0c0c0"}, {"maroon", "#800000"},
      {"navy", "#000080"},   {"teal", "#008080"},      {"olive", "#808000"},  {"lime", "#00ff00"},
      {"aqua", "#00ffff"},   {"fuchsia", "#ff00ff"},   {"steelblue", "#4682b4"},
      {"lightgray", "#d3d3d3"}, {"lightgrey", "#d3d3d3"}, {"darkgray", "#a9a9a9"}, {"darkgrey", "#a9a9a9"},
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower.size() == 4 && lower[0] == '#') {
    std::string expanded = "#";
    for (std::size_t i = 1; i < 4; ++i) {
      expanded.push_back(lower[i]);
      expanded.push_back(lower[i]);
    }
    lower = expanded;
  }
  if (is_hex_color(lower)) return lower;
  if (auto it = kNamed.find(lower); it != kNamed.end()) return it->second;
  return std::nullopt;
}

std::string format_label(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_fixed2(double v) {
  // Integer hundredths, rounded half-up.
  const auto cents = static_cast<long long>(std::floor(v * 100.0 + 0.5));
  if (cents == 0) return "0.00";
  const long long mag = cents < 0 ? -cents : cents;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents < 0 ? "-" : "", mag / 100, mag % 100);
  return buf;
}

}  // namespace gogc
