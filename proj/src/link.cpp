#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"

namespace gogc {

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Data: return "data";
    case NodeKind::Transform: return "transform";
    case NodeKind::Scale: return "scale";
    case NodeKind::Frame: return "frame";
    case NodeKind::Axis: return "axis";
    case NodeKind::Geom: return "geom";
    case NodeKind::Guide: return "guide";
  }
  return "data";
}

std::optional<std::size_t> LinkGraph::find(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> LinkGraph::execution_order() const {
  std::vector<std::size_t> pending(nodes.size(), 0);
  std::vector<std::vector<std::size_t>> dependents(nodes.size());
  std::set<std::pair<std::size_t, std::size_t>> unique(edges.begin(), edges.end());
  for (const auto& [dep, prov] : unique) {
    ++pending[dep];
    dependents[prov].push_back(dep);
  }
  using Key = std::tuple<int, std::size_t, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  auto key = [&](std::size_t i) { return Key{static_cast<int>(nodes[i].kind), nodes[i].index, i}; };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (pending[i] == 0) ready.push(key(i));
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t n = std::get<2>(ready.top());
    ready.pop();
    order.push_back(n);
    for (std::size_t d : dependents[n]) {
      if (--pending[d] == 0) ready.push(key(d));
    }
  }
  if (order.size() != nodes.size()) fail(ErrorCode::IllegalLink, "layer references form a cycle");
  return order;
}

bool LinkGraph::is_topological(const std::vector<std::size_t>& order) const {
  if (order.size() != nodes.size()) return false;
  std::vector<std::size_t> pos(nodes.size(), SIZE_MAX);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= nodes.size() || pos[order[i]] != SIZE_MAX) return false;
    pos[order[i]] = i;
  }
  return std::all_of(edges.begin(), edges.end(), [&](const auto& e) { return pos[e.second] < pos[e.first]; });
}

namespace {

bool color_range(const ScaleDef& def) {
  const auto* list = std::get_if<std::vector<ScaleOutput>>(&def.range);
  if (!list) return false;
  return std::all_of(list->begin(), list->end(), [](const ScaleOutput& o) {
    const auto* s = std::get_if<std::string>(&o);
    return s && normalize_color(*s).has_value();
  });
}

bool numeric_range(const ScaleDef& def) {
  const auto* list = std::get_if<std::vector<ScaleOutput>>(&def.range);
  if (!list) return true;
  return std::all_of(list->begin(), list->end(), [](const ScaleOutput& o) { return std::holds_alternative<double>(o); });
}

bool name_range(const ScaleDef& def) {
  const auto* list = std::get_if<std::vector<ScaleOutput>>(&def.range);
  if (!list) return false;
  return std::all_of(list->begin(), list->end(), [](const ScaleOutput& o) { return std::holds_alternative<std::string>(o); });
}

bool band_scale(const ScaleDef& def) { return def.kind == ScaleKind::Ordinal && !std::holds_alternative<std::vector<ScaleOutput>>(def.range); }

class Linker {
 public:
  Linker(SpecTree& tree, const DataRegistry& preloaded, std::vector<Diagnostic>& diags)
      : tree_(tree), preloaded_(preloaded), diags_(diags) {}

  LinkGraph run();

 private:
  void error(const std::string& path, ErrorCode code, const std::string& msg) {
    diags_.push_back({Severity::Error, Phase::Link, path, std::string(to_string(code)) + ": " + msg});
  }
  void warn(const std::string& path, const std::string& msg) {
    diags_.push_back({Severity::Warning, Phase::Link, path, msg});
  }

  std::size_t add(std::string id, NodeKind kind, std::size_t index, std::string path) {
    g_.nodes.push_back({std::move(id), kind, index, std::move(path)});
    return g_.nodes.size() - 1;
  }
  void edge(std::size_t dependent, std::size_t provider) { g_.edges.emplace_back(dependent, provider); }

  // Current provider of a dataset name, creating nodes for preloaded tables.
  std::optional<std::size_t> dataset(const std::string& name) {
    if (auto it = writer_.find(name); it != writer_.end()) return it->second;
    if (preloaded_.contains(name)) {
      const std::size_t n = add("data:" + name, NodeKind::Data, data_count_++, "");
      writer_[name] = n;
      return n;
    }
    return std::nullopt;
  }
  bool known_dataset(const std::string& name) const { return writer_.count(name) || preloaded_.contains(name); }

  void use_dataset(std::size_t node, const std::string& name, const std::string& path) {
    if (auto p = dataset(name)) {
      edge(node, *p);
    } else {
      error(path, ErrorCode::UnknownDataset, "no dataset named '" + name + "'");
    }
  }

  std::optional<std::size_t> use_scale(std::size_t node, const std::string& name, const std::string& path) {
    auto it = scale_nodes_.find(name);
    if (it == scale_nodes_.end()) {
      error(path, ErrorCode::UnknownScale, "no scale named '" + name + "'");
      return std::nullopt;
    }
    edge(node, it->second);
    used_.insert(name);
    return it->second;
  }

  void link_transforms();
  void link_scales();
  void link_axes();
  void link_geoms();
  void link_guides();

  SpecTree& tree_;
  const DataRegistry& preloaded_;
  std::vector<Diagnostic>& diags_;
  LinkGraph g_;
  std::map<std::string, std::size_t> writer_;
  std::map<std::string, std::size_t> scale_nodes_;
  std::set<std::string> used_;
  std::size_t data_count_ = 0;
  std::size_t frame_ = 0;
  std::optional<std::string> parallel_data_;
};

void Linker::link_transforms() {
  for (std::size_t i = 0; i < tree_.transforms.size(); ++i) {
    const TransformSpec& t = tree_.transforms[i];
    const std::size_t n = add("transform:" + std::to_string(i), NodeKind::Transform, i, t.path);
    const auto inputs = t.inputs();
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      std::string key = "data";
      if (t.kind == TransformKind::Join || t.kind == TransformKind::Cross) key = k == 0 ? "left" : "right";
      std::string path = pointer_child(t.path, key);
      if (t.kind == TransformKind::Variable) path = pointer_child(pointer_child(t.path, "properties"), "data");
      use_dataset(n, inputs[k], path);
    }
    const std::string out = t.output();
    const bool named = t.kind == TransformKind::Generator || t.name.has_value();
    if (named && known_dataset(out)) {
      std::string path = t.path;
      if (t.name) path = pointer_child(t.path, "name");
      error(path, ErrorCode::DuplicateDataset, "step output '" + out + "' collides with an existing dataset");
    }
    writer_[out] = n;
  }
}

void Linker::link_scales() {
  for (std::size_t i = 0; i < tree_.scales.size(); ++i) {
    const ScaleSpec& s = tree_.scales[i];
    if (scale_nodes_.count(s.def.name)) {
      error(pointer_child(s.path, "name"), ErrorCode::IllegalLink, "scale '" + s.def.name + "' is declared twice");
      continue;
    }
    const std::size_t n = add("scale:" + s.def.name, NodeKind::Scale, i, s.path);
    scale_nodes_[s.def.name] = n;
    if (const auto* ref = std::get_if<DomainRef>(&s.def.domain)) {
      use_dataset(n, ref->data, pointer_child(pointer_child(s.path, "domain"), "data"));
    }
  }
}

void Linker::link_axes() {
  const bool parallel = is_parallel(tree_.axes.kind);
  for (std::size_t i = 0; i < tree_.axes.axes.size(); ++i) {
    const AxisEntry& a = tree_.axes.axes[i];
    const std::size_t n = add("axis:" + std::to_string(i), NodeKind::Axis, i, a.path);
    edge(n, frame_);
    std::optional<std::string> data = a.spec.data;
    std::optional<std::string> field = a.spec.field;
    if (a.spec.scale) {
      if (use_scale(n, *a.spec.scale, pointer_child(a.path, "scale"))) {
        const ScaleDef& def = tree_.find_scale(*a.spec.scale)->def;
        if (!numeric_range(def)) {
          error(pointer_child(a.path, "scale"), ErrorCode::IllegalLink,
                "scale '" + def.name + "' maps to " + (color_range(def) ? "colors" : "names") +
                    " and cannot position an axis");
        }
        if (const auto* ref = std::get_if<DomainRef>(&def.domain)) {
          if (!data) data = ref->data;
          if (!field) field = ref->field;
        }
        if (tree_.axes.kind == CoordKind::Equal) edge(frame_, scale_nodes_.at(def.name));
      }
    }
    if (a.spec.data) use_dataset(n, *a.spec.data, pointer_child(a.path, "data"));
    if (!parallel) continue;
    if (!data || !field) {
      error(a.path, ErrorCode::UnboundChannel, "parallel axis needs a dataset field, through 'data' and 'field' or its scale's domain");
      continue;
    }
    if (!a.spec.data) use_dataset(n, *data, a.path);
    if (!parallel_data_) {
      parallel_data_ = data;
    } else if (*parallel_data_ != *data) {
      error(a.path, ErrorCode::IllegalLink, "parallel axes read '" + *parallel_data_ + "' and '" + *data +
                                                "'; every axis must read the same dataset");
    }
  }
}

const std::set<std::string> kPositional = {"x", "y", "y2", "size", "theta", "innerRadius", "outerRadius"};

void Linker::link_geoms() {
  const bool parallel = is_parallel(tree_.axes.kind);
  if (parallel && tree_.geoms.empty() && parallel_data_) {
    GeomSpec g;
    g.kind = MarkKind::Line;
    g.data = parallel_data_;
    g.path = tree_.axes.path;
    ChannelSpec stroke;
    stroke.value = std::string(kPalette[0]);
    stroke.path = tree_.axes.path;
    g.channels["strokeColor"] = stroke;
    Json geom = Json::object();
    geom["type"] = "line";
    geom["data"] = *parallel_data_;
    geom["properties"] = Json::object({{"strokeColor", std::string(kPalette[0])}});
    tree_.defaults.push_back({"/geom", Json::array({geom})});
    tree_.geoms.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < tree_.geoms.size(); ++i) {
    const GeomSpec& g = tree_.geoms[i];
    const std::size_t n = add("geom:" + std::to_string(i), NodeKind::Geom, i, g.path);
    edge(n, frame_);
    if (g.data) use_dataset(n, *g.data, pointer_child(g.path, "data"));
    if (parallel && g.data && parallel_data_ && *g.data != *parallel_data_) {
      error(pointer_child(g.path, "data"), ErrorCode::IllegalLink,
            "geom reads '" + *g.data + "' but the parallel axes read '" + *parallel_data_ + "'");
    }
    for (const auto& [name, ch] : g.channels) {
      if (!ch.scale) continue;
      if (!use_scale(n, *ch.scale, ch.scale_path)) continue;
      const ScaleDef& def = tree_.find_scale(*ch.scale)->def;
      if (kPositional.count(name) && !numeric_range(def)) {
        error(ch.scale_path, ErrorCode::IllegalLink, "channel '" + name + "' needs numbers but scale '" + def.name +
                                                         "' maps to " + (color_range(def) ? "colors" : "names"));
      } else if ((name == "fillColor" || name == "strokeColor") && !color_range(def)) {
        error(ch.scale_path, ErrorCode::IllegalLink, "channel '" + name + "' needs colors but scale '" + def.name +
                                                         "' does not map to a color list");
      } else if (name == "shape" && !name_range(def)) {
        error(ch.scale_path, ErrorCode::IllegalLink, "channel 'shape' needs symbol names but scale '" + def.name +
                                                         "' does not map to a name list");
      } else if (name == "theta" && g.kind == MarkKind::Arc && def.kind == ScaleKind::Ordinal) {
        error(ch.scale_path, ErrorCode::IllegalLink, "arc angles need a quantitative scale, '" + def.name + "' is ordinal");
      }
      if (tree_.axes.kind == CoordKind::Equal && (name == "x" || name == "y")) edge(frame_, scale_nodes_.at(def.name));
    }
    // Bars need an ordinal band scale on the category channel.
    if (g.kind == MarkKind::Bar || g.kind == MarkKind::VerticalBar || g.kind == MarkKind::StackedBar) {
      auto band = [&](const char* name) {
        auto it = g.channels.find(name);
        if (it == g.channels.end() || !it->second.scale) return false;
        const ScaleSpec* s = tree_.find_scale(*it->second.scale);
        return s && band_scale(s->def);
      };
      const bool ok = band("x") || (g.kind == MarkKind::Bar && band("y"));
      if (!ok && !parallel) {
        const auto it = g.channels.find("x");
        error(it != g.channels.end() ? it->second.path : pointer_child(g.path, "properties"), ErrorCode::IllegalLink,
              std::string(to_string(g.kind)) + " needs an ordinal scale with a [min, max] range on its category channel");
      }
    }
  }
}

void Linker::link_guides() {
  for (std::size_t i = 0; i < tree_.guides.size(); ++i) {
    const GuideEntry& g = tree_.guides[i];
    const std::size_t n = add("guide:" + std::to_string(i), NodeKind::Guide, i, g.path);
    use_scale(n, g.spec.scale, g.scale_path);
  }
}

LinkGraph Linker::run() {
  for (std::size_t i = 0; i < tree_.data.size(); ++i) {
    const DataSpec& d = tree_.data[i];
    if (writer_.count(d.name)) {
      error(pointer_child(d.path, "name"), ErrorCode::DuplicateDataset, "dataset '" + d.name + "' is declared twice");
      continue;
    }
    writer_[d.name] = add("data:" + d.name, NodeKind::Data, data_count_++, d.path);
  }
  link_transforms();
  link_scales();
  frame_ = add("frame", NodeKind::Frame, 0, tree_.axes.path);
  link_axes();
  link_geoms();
  link_guides();
  for (const auto& s : tree_.scales) {
    if (!used_.count(s.def.name)) warn(s.path, "scale '" + s.def.name + "' is never used");
  }
  return std::move(g_);
}

}  // namespace

LinkGraph link(SpecTree& tree, const DataRegistry& preloaded, std::vector<Diagnostic>& diagnostics) {
  return Linker(tree, preloaded, diagnostics).run();
}

}  // namespace gogc
