#include "gogc/spec_tree.hpp"

namespace gogc {

std::string_view to_string(TransformKind k) {
  switch (k) {
    case TransformKind::Filter: return "filter";
    case TransformKind::Group: return "group";
    case TransformKind::Join: return "join";
    case TransformKind::Cross: return "cross";
    case TransformKind::Nest: return "nest";
    case TransformKind::Variable: return "variable";
    case TransformKind::Generator: return "generator";
  }
  return "filter";
}

namespace {

std::optional<std::string> text_property(const Properties& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end() || !is_text(it->second)) return std::nullopt;
  return std::get<std::string>(it->second);
}

}  // namespace

std::string TransformSpec::output() const {
  if (kind == TransformKind::Generator) {
    if (auto d = text_property(properties, "data")) return *d;
    if (auto n = text_property(properties, "name")) return *n;
    return function;
  }
  if (name) return *name;
  return data;
}

std::vector<std::string> TransformSpec::inputs() const {
  switch (kind) {
    case TransformKind::Generator: return {};
    case TransformKind::Join:
    case TransformKind::Cross: return {data, right};
    default: return {data};
  }
}

const ScaleSpec* SpecTree::find_scale(std::string_view name) const {
  for (const auto& s : scales) {
    if (s.def.name == name) return &s;
  }
  return nullptr;
}

CoordSystem SpecTree::coord_system() const {
  return CoordSystem(axes.kind, frame, axes.inset, is_parallel(axes.kind) ? axes.axes.size() : 0);
}

}  // namespace gogc
