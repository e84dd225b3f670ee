#include <algorithm>
#include <set>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"

namespace gogc {

namespace {

class Parser {
 public:
  explicit Parser(SpecTree& tree) : tree_(tree) {}

  // Value at obj[key], or `fallback` recorded as a filled default.
  template <typename T>
  T get(const Json& obj, const std::string& path, const char* key, T fallback) {
    if (obj.is_object() && obj.contains(key)) return obj.at(key).get<T>();
    tree_.defaults.push_back({pointer_child(path, key), Json(fallback)});
    return fallback;
  }

  void record(const std::string& path, Json value) { tree_.defaults.push_back({path, std::move(value)}); }

  SpecTree& tree_;
};

template <typename F>
void entries(const Json& block, const std::string& path, F&& fn) {
  if (block.is_array()) {
    for (std::size_t i = 0; i < block.size(); ++i) fn(block[i], pointer_child(path, i));
  } else if (block.is_object()) {
    fn(block, path);
  }
}

DataValue to_value(const Json& v) {
  if (v.is_number()) return number_value(v.get<double>());
  if (v.is_string()) return text_value(v.get<std::string>());
  if (v.is_boolean()) return bool_value(v.get<bool>());
  return null_value();
}

Properties to_properties(const Json& obj) {
  Properties out;
  if (!obj.is_object()) return out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out[it.key()] = to_value(it.value());
  return out;
}

std::string format_from_name(const std::string& file) {
  auto ends = [&](std::string_view ext) {
    if (file.size() < ext.size()) return false;
    std::string tail = file.substr(file.size() - ext.size());
    std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
    return tail == ext;
  };
  if (ends(".tsv") || ends(".tab")) return "tsv";
  if (ends(".json")) return "json";
  return "csv";
}

void parse_data(Parser& p, const Json& d, const std::string& path) {
  DataSpec spec;
  spec.path = path;
  spec.name = d.at("name").get<std::string>();
  const Json& src = d.contains("values") ? d.at("values") : d.at("url");
  std::string inferred = "json";
  if (src.is_string()) {
    spec.file = src.get<std::string>();
    inferred = format_from_name(*spec.file);
  } else {
    spec.inline_rows = src;
  }
  if (d.contains("format") && d.at("format").contains("type")) {
    spec.format = d.at("format").at("type").get<std::string>();
  } else {
    spec.format = inferred;
    p.record(pointer_child(pointer_child(path, "format"), "type"), inferred);
  }
  p.tree_.data.push_back(std::move(spec));
}

void parse_transform(Parser& p, const Json& t, const std::string& path) {
  TransformSpec spec;
  spec.path = path;
  auto str = [&](const char* key) { return t.contains(key) ? t.at(key).get<std::string>() : std::string(); };
  if (t.contains("name")) spec.name = t.at("name").get<std::string>();
  if (!t.contains("type")) {
    spec.function = t.at("function").get<std::string>();
    spec.properties = to_properties(t.at("properties"));
    if (is_variable_function(spec.function)) {
      spec.kind = TransformKind::Variable;
      spec.data = std::get<std::string>(spec.properties.at("data"));
      spec.field = std::get<std::string>(spec.properties.at("field"));
    } else {
      spec.kind = TransformKind::Generator;
    }
    p.tree_.transforms.push_back(std::move(spec));
    return;
  }
  const std::string type = t.at("type").get<std::string>();
  if (type == "filter") {
    spec.kind = TransformKind::Filter;
    spec.data = str("data");
    spec.expr = str("expr");
  } else if (type == "group") {
    spec.kind = TransformKind::Group;
    spec.data = str("data");
    spec.keys = t.at("keys").get<std::vector<std::string>>();
    if (t.contains("aggregates")) {
      const Json& aggs = t.at("aggregates");
      for (std::size_t i = 0; i < aggs.size(); ++i) {
        const Json& a = aggs[i];
        Aggregate agg;
        agg.field = a.at("field").get<std::string>();
        agg.stat = parse_stat(a.at("stat").get<std::string>());
        const std::string fallback = a.at("stat").get<std::string>() + "_" + agg.field;
        agg.output = p.get<std::string>(a, pointer_child(pointer_child(path, "aggregates"), i), "as", fallback);
        spec.aggregates.push_back(std::move(agg));
      }
    }
  } else if (type == "join" || type == "cross") {
    spec.kind = type == "join" ? TransformKind::Join : TransformKind::Cross;
    spec.data = str("left");
    spec.right = str("right");
    if (type == "join") {
      spec.key = str("key");
      spec.side = p.get<std::string>(t, path, "side", "left") == "right" ? JoinSide::Right : JoinSide::Left;
    }
  } else {
    spec.kind = TransformKind::Nest;
    spec.data = str("data");
    spec.x = str("x");
    spec.y = str("y");
    spec.fields = t.at("fields").get<std::vector<std::string>>();
  }
  p.tree_.transforms.push_back(std::move(spec));
}

ScaleOutput to_output(const Json& v) {
  if (v.is_number()) return v.get<double>();
  std::string s = v.get<std::string>();
  if (auto c = normalize_color(s)) return *c;
  return s;
}

void parse_scale(Parser& p, const Json& sc, const std::string& path) {
  ScaleSpec spec;
  spec.path = path;
  ScaleDef& def = spec.def;
  def.name = sc.at("name").get<std::string>();
  def.kind = *scale_kind_from(sc.at("type").get<std::string>());
  const Json& d = sc.at("domain");
  if (d.is_object()) {
    def.domain = DomainRef{d.at("data").get<std::string>(), d.at("field").get<std::string>()};
  } else if (def.kind == ScaleKind::Ordinal) {
    std::vector<DataValue> cats;
    for (const auto& e : d) cats.push_back(to_value(e));
    def.domain = std::move(cats);
  } else {
    def.domain = d.get<std::vector<double>>();
  }

  const std::string rpath = pointer_child(path, "range");
  if (!sc.contains("range")) {
    std::vector<ScaleOutput> palette;
    Json names = Json::array();
    for (auto c : kPalette) {
      palette.emplace_back(std::string(c));
      names.push_back(std::string(c));
    }
    def.range = palette;
    Json j = Json::object();
    j["type"] = "discrete";
    j["value"] = names;
    p.record(rpath, j);
  } else {
    const Json& r = sc.at("range");
    const Json& v = r.is_object() ? r.at("value") : r;
    bool continuous = def.kind != ScaleKind::Ordinal && def.kind != ScaleKind::Quantile;
    if (r.is_object() && r.contains("type")) {
      continuous = r.at("type").get<std::string>() == "range";
    } else if (def.kind == ScaleKind::Ordinal) {
      continuous = v.is_string() || (v.size() == 2 && v[0].is_number() && v[1].is_number());
    }
    if (v.is_string()) {
      def.range = v.get<std::string>() == "width" ? NamedExtent::Width : NamedExtent::Height;
    } else if (continuous) {
      def.range = NumericPair{v[0].get<double>(), v[1].get<double>()};
    } else {
      std::vector<ScaleOutput> list;
      for (const auto& e : v) list.push_back(to_output(e));
      def.range = std::move(list);
    }
  }
  def.exponent = p.get<double>(sc, path, "exponent", 1.0);
  def.clamp = p.get<bool>(sc, path, "clamp", false);
  p.tree_.scales.push_back(std::move(spec));
}

AxisSpec parse_axis(Parser& p, const Json& a, const std::string& path) {
  AxisSpec axis;
  axis.dim = a.at("type").get<std::string>() == "x" ? AxisDim::X : AxisDim::Y;
  if (a.contains("scale")) axis.scale = a.at("scale").get<std::string>();
  if (a.contains("data")) axis.data = a.at("data").get<std::string>();
  if (a.contains("field")) axis.field = a.at("field").get<std::string>();
  if (a.contains("orient")) {
    axis.orient = a.at("orient").get<std::string>();
  } else {
    p.record(pointer_child(path, "orient"), axis.dim == AxisDim::X ? "bottom" : "left");
  }
  axis.grid = p.get<bool>(a, path, "grid", false);
  axis.ticks = p.get<int>(a, path, "ticks", defaults::kTicks);
  const Json empty = Json::object();
  const Json& text = a.contains("text") ? a.at("text") : empty;
  const std::string tpath = pointer_child(path, "text");
  axis.text.font = p.get<std::string>(text, tpath, "font", std::string(defaults::kFont));
  axis.text.color = *normalize_color(p.get<std::string>(text, tpath, "color", std::string(defaults::kTextColor)));
  if (a.contains("annotation")) {
    const Json& an = a.at("annotation");
    const std::string apath = pointer_child(path, "annotation");
    Annotation ann;
    ann.title = p.get<std::string>(an, apath, "title", "");
    ann.position = p.get<std::string>(an, apath, "position", "edge");
    ann.font = p.get<std::string>(an, apath, "font", std::string(defaults::kTitleFont));
    ann.color = *normalize_color(p.get<std::string>(an, apath, "color", std::string(defaults::kTextColor)));
    axis.annotation = ann;
  }
  if (a.contains("transform")) {
    const Json& t = a.at("transform");
    VariableTransform vt;
    vt.function = t.at("function").get<std::string>();
    if (t.contains("properties")) vt.properties = to_properties(t.at("properties"));
    axis.transform = vt;
  }
  return axis;
}

void parse_axes(Parser& p, const Json& axes, const std::string& path) {
  AxesSpec& out = p.tree_.axes;
  out.path = path;
  auto add = [&](const Json& a, const std::string& apath) { out.axes.push_back({parse_axis(p, a, apath), apath}); };
  if (axes.is_array()) {
    for (std::size_t i = 0; i < axes.size(); ++i) add(axes[i], pointer_child(path, i));
    return;
  }
  const std::string type = axes.at("type").get<std::string>();
  if (type == "x" || type == "y") {
    add(axes, path);
    return;
  }
  out.kind = *coord_kind_from(type);
  const double default_inset = out.kind == CoordKind::PolarParallel ? defaults::kPolarParallelInset
                                                                     : defaults::kPolarInset;
  if (out.kind == CoordKind::Polar || out.kind == CoordKind::PolarParallel) {
    out.inset = p.get<double>(axes, path, "inset", default_inset);
  } else if (axes.contains("inset")) {
    out.inset = axes.at("inset").get<double>();
  }
  if (axes.contains("properties")) entries(axes.at("properties"), pointer_child(path, "properties"), add);
}

bool names_scale(const SpecTree& tree, const std::string& name) { return tree.find_scale(name) != nullptr; }

void parse_channel_string(const SpecTree& tree, const std::string& key, const std::string& s, ChannelSpec& ch);

ChannelSpec parse_channel(const SpecTree& tree, const std::string& key, const Json& v, const std::string& path) {
  ChannelSpec ch;
  ch.path = path;
  ch.scale_path = v.is_object() ? pointer_child(path, "scale") : path;
  if (v.is_object()) {
    if (v.contains("scale")) ch.scale = v.at("scale").get<std::string>();
    if (v.contains("field")) ch.field = v.at("field").get<std::string>();
    if (v.contains("value")) {
      ch.value = v.at("value");
      if (!ch.scale && v.at("value").is_string()) {
        if (auto c = normalize_color(v.at("value").get<std::string>()); c && key.ends_with("Color")) ch.value = *c;
      }
    }
  } else if (!v.is_string()) {
    ch.value = v;
    return ch;
  } else {
    parse_channel_string(tree, key, v.get<std::string>(), ch);
  }
  // A scale used without a field or a value reads its own domain field.
  if (ch.scale && !ch.field && !ch.value) {
    if (const ScaleSpec* sc = tree.find_scale(*ch.scale)) {
      if (const auto* ref = std::get_if<DomainRef>(&sc->def.domain)) ch.field = ref->field;
    }
  }
  return ch;
}

void parse_channel_string(const SpecTree& tree, const std::string& key, const std::string& s, ChannelSpec& ch) {
  if (key == "text") {
    ch.field = s;
  } else if (key == "fillColor" || key == "strokeColor") {
    if (!names_scale(tree, s) && normalize_color(s)) {
      ch.value = *normalize_color(s);
    } else {
      ch.scale = s;
    }
  } else if (key == "shape") {
    if (!names_scale(tree, s) && is_shape(s)) {
      ch.value = s;
    } else {
      ch.scale = s;
    }
  } else {
    ch.scale = s;
  }
}

bool uses_fill(MarkKind k) {
  switch (k) {
    case MarkKind::Line:
    case MarkKind::HLine:
    case MarkKind::VLine:
    case MarkKind::Picture: return false;
    default: return true;
  }
}

bool uses_stroke(MarkKind k) { return k == MarkKind::Line || k == MarkKind::HLine || k == MarkKind::VLine; }

void parse_geom(Parser& p, const Json& g, const std::string& path, bool parallel) {
  GeomSpec spec;
  spec.path = path;
  spec.kind = *mark_kind_from(g.at("type").get<std::string>());
  if (g.contains("data")) spec.data = g.at("data").get<std::string>();
  const Json empty = Json::object();
  const Json& props = g.contains("properties") ? g.at("properties") : empty;
  const std::string ppath = pointer_child(path, "properties");
  static const std::vector<std::string> kChannelKeys = {"x",     "y",    "y2",    "fillColor",   "strokeColor", "size",
                                                        "shape", "text", "theta", "innerRadius", "outerRadius"};
  for (const auto& key : kChannelKeys) {
    if (props.contains(key)) spec.channels[key] = parse_channel(p.tree_, key, props.at(key), pointer_child(ppath, key));
  }
  auto fill_color = [&](const char* key) {
    if (spec.channels.count(key)) return;
    ChannelSpec ch;
    ch.value = std::string(kPalette[0]);
    ch.path = pointer_child(ppath, key);
    spec.channels[key] = ch;
    p.record(ch.path, std::string(kPalette[0]));
  };
  const bool stroke = uses_stroke(spec.kind) || (parallel && spec.kind == MarkKind::Line);
  if (stroke) {
    fill_color("strokeColor");
  } else if (uses_fill(spec.kind) && spec.kind != MarkKind::Text) {
    fill_color("fillColor");
  } else if (spec.kind == MarkKind::Text && !spec.channels.count("fillColor")) {
    ChannelSpec ch;
    ch.value = std::string(defaults::kTextColor);
    ch.path = pointer_child(ppath, "fillColor");
    spec.channels["fillColor"] = ch;
    p.record(ch.path, std::string(defaults::kTextColor));
  }

  MarkParams& mp = spec.params;
  if (props.contains("group")) mp.group = props.at("group").get<std::string>();
  if (props.contains("bins")) mp.bins = props.at("bins").get<std::size_t>();
  if (spec.kind == MarkKind::Text) {
    mp.font = p.get<std::string>(props, ppath, "font", std::string(defaults::kFont));
    const std::string anchor = p.get<std::string>(props, ppath, "anchor", "middle");
    mp.anchor = anchor == "start" ? TextAnchor::Start : anchor == "end" ? TextAnchor::End : TextAnchor::Middle;
  }
  const bool bar = spec.kind == MarkKind::Bar || spec.kind == MarkKind::VerticalBar || spec.kind == MarkKind::StackedBar;
  if (bar) mp.band_fill = p.get<double>(props, ppath, "bandFill", defaults::kBandFill);
  if (spec.kind == MarkKind::Point || (parallel && spec.kind == MarkKind::Point)) {
    mp.radius = p.get<double>(props, ppath, "radius", defaults::kPointRadius);
  }
  if (spec.kind == MarkKind::Marks) mp.symbol_size = p.get<double>(props, ppath, "symbolSize", defaults::kSymbolSize);
  if (stroke) mp.stroke_width = p.get<double>(props, ppath, "strokeWidth", defaults::kStrokeWidth);
  mp.opacity = p.get<double>(props, ppath, "opacity", 1.0);
  p.tree_.geoms.push_back(std::move(spec));
}

void parse_guide(Parser& p, const Json& g, const std::string& path) {
  GuideEntry entry;
  entry.path = path;
  GuideSpec& spec = entry.spec;
  spec.scale = g.contains("scale") ? g.at("scale").get<std::string>() : g.at("domain").at("scale").get<std::string>();
  entry.scale_path = g.contains("scale") ? pointer_child(path, "scale") : pointer_child(pointer_child(path, "domain"), "scale");
  const Json empty = Json::object();
  const Json& props = g.contains("properties") ? g.at("properties") : empty;
  const std::string ppath = pointer_child(path, "properties");
  if (props.contains("title")) {
    const Json& t = props.at("title");
    spec.title = t.is_object() ? t.at("name").get<std::string>() : t.get<std::string>();
  } else {
    spec.title = spec.scale;
    p.record(pointer_child(pointer_child(ppath, "title"), "name"), spec.scale);
  }
  if (props.contains("position")) {
    spec.position = LegendPosition{props.at("position").at("x").get<double>(), props.at("position").at("y").get<double>()};
  }
  spec.font = p.get<std::string>(props, ppath, "font", std::string(defaults::kFont));
  p.tree_.guides.push_back(std::move(entry));
}

}  // namespace

SpecTree parse(const Json& spec) {
  SpecTree tree;
  Parser p(tree);
  tree.frame.width = p.get<double>(spec, "", "width", defaults::kWidth);
  tree.frame.height = p.get<double>(spec, "", "height", defaults::kHeight);
  tree.frame.padding = p.get<double>(spec, "", "padding", defaults::kPadding);

  entries(spec.at("data"), "/data", [&](const Json& d, const std::string& path) { parse_data(p, d, path); });
  if (spec.contains("transform")) {
    entries(spec.at("transform"), "/transform", [&](const Json& t, const std::string& path) { parse_transform(p, t, path); });
  } else {
    p.record("/transform", Json::array());
  }
  // Scales first so channel strings can be told apart from color names.
  if (spec.contains("scales")) {
    entries(spec.at("scales"), "/scales", [&](const Json& s, const std::string& path) { parse_scale(p, s, path); });
  }
  if (spec.contains("axes")) {
    parse_axes(p, spec.at("axes"), "/axes");
  } else {
    tree.axes.path = "";
  }
  if (spec.contains("geom")) {
    const bool parallel = is_parallel(tree.axes.kind);
    entries(spec.at("geom"), "/geom", [&](const Json& g, const std::string& path) { parse_geom(p, g, path, parallel); });
  }
  if (spec.contains("guides")) {
    entries(spec.at("guides"), "/guides", [&](const Json& g, const std::string& path) { parse_guide(p, g, path); });
  }
  return tree;
}

}  // namespace gogc
