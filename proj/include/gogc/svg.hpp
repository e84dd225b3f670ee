#pragma once

#include <string>
#include <string_view>

#include "gogc/scene.hpp"

namespace gogc {

std::string xml_escape(std::string_view text);

// Standalone SVG 1.1. Numbers carry exactly two decimals. Element attribute
// order: geometry first, then fill, stroke, stroke-width, opacity. Throws
// InvalidCommand for a command failing validate_command.
std::string emit_svg(const SceneGraph& scene);

}  // namespace gogc
