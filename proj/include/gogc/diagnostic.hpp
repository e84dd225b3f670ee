#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gogc {

enum class Severity { Error, Warning };
enum class Phase { Scan, Parse, Link, Assemble };

std::string_view to_string(Severity s);
std::string_view to_string(Phase p);

struct Diagnostic {
  Severity severity = Severity::Error;
  Phase phase = Phase::Scan;
  std::string path;  // JSON pointer into the input spec
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// One compact JSON object: {"severity":..,"phase":..,"path":..,"message":..}
std::string to_json_line(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

// Sink for non-fatal findings raised inside the layers (NaN cells, skipped
// rows, duplicate join keys). The compiler attaches phase and path.
using Warnings = std::vector<std::string>;

// JSON pointer segment escaping ("~" -> "~0", "/" -> "~1").
std::string pointer_child(const std::string& parent, std::string_view key);
std::string pointer_child(const std::string& parent, std::size_t index);

}  // namespace gogc
