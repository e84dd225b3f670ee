#include "gogc/diagnostic.hpp"

#include <algorithm>

#include <json.hpp>

namespace gogc {

std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Scan: return "scan";
    case Phase::Parse: return "parse";
    case Phase::Link: return "link";
    case Phase::Assemble: return "assemble";
  }
  return "scan";
}

std::string to_json_line(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = to_string(d.severity);
  j["phase"] = to_string(d.phase);
  j["path"] = d.path;
  j["message"] = d.message;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string pointer_child(const std::string& parent, std::string_view key) {
  std::string out = parent;
  out.push_back('/');
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string pointer_child(const std::string& parent, std::size_t index) {
  return parent + "/" + std::to_string(index);
}

}  // namespace gogc
