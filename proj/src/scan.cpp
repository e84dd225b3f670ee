#include <algorithm>
#include <cmath>
#include <set>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"

namespace gogc {

const std::vector<std::string>& legal_scale_types() {
  static const std::vector<std::string> v = {"linear", "log", "exp", "pow", "quantile", "ordinal"};
  return v;
}

const std::vector<std::string>& legal_axes_types() {
  static const std::vector<std::string> v = {"x",           "y",          "coord_equal",         "coord_flip",
                                             "coord_polar", "coord_parallel", "coord_polar_parallel"};
  return v;
}

const std::vector<std::string>& legal_geom_types() {
  static const std::vector<std::string> v = {"point", "line",  "area",  "bar",     "vertical_bar", "stacked_bar",
                                             "histogram", "arc", "pie", "donut", "hline", "vline",
                                             "text",  "picture", "marks", "symbol"};
  return v;
}

namespace {

const std::vector<std::string> kChannels = {"x",     "y",     "y2",    "fillColor", "strokeColor", "size",
                                            "shape", "text",  "theta", "innerRadius", "outerRadius"};
const std::vector<std::string> kGeomParams = {"group", "bins",        "font",        "anchor",
                                              "bandFill", "radius", "symbolSize", "strokeWidth", "opacity"};

std::string kind_name(const Json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return "boolean";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  return "object";
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

// Renames "colour" keys to "color" at every depth.
Json normalize_keys(const Json& v) {
  if (v.is_array()) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(normalize_keys(e));
    return out;
  }
  if (!v.is_object()) return v;
  Json out = Json::object();
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::string key = it.key();
    if (key == "colour") {
      if (v.contains("color")) continue;
      key = "color";
    }
    out[key] = normalize_keys(it.value());
  }
  return out;
}

class Scanner {
 public:
  std::vector<Diagnostic> diags;

  void error(const std::string& path, std::string msg) {
    diags.push_back({Severity::Error, Phase::Scan, path, std::move(msg)});
  }
  void warn(const std::string& path, std::string msg) {
    diags.push_back({Severity::Warning, Phase::Scan, path, std::move(msg)});
  }

  // Unknown keys are warnings.
  void keys(const Json& obj, const std::string& path, const std::vector<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        warn(pointer_child(path, it.key()), "unknown key '" + it.key() + "' ignored");
      }
    }
  }

  bool object(const Json& v, const std::string& path) { return expect(v, path, v.is_object(), "object"); }
  bool array(const Json& v, const std::string& path) { return expect(v, path, v.is_array(), "array"); }
  bool string(const Json& v, const std::string& path) { return expect(v, path, v.is_string(), "string"); }
  bool boolean(const Json& v, const std::string& path) { return expect(v, path, v.is_boolean(), "boolean"); }
  bool number(const Json& v, const std::string& path) { return expect(v, path, v.is_number(), "number"); }

  bool number_in(const Json& v, const std::string& path, double lo, double hi, bool lo_open, bool hi_open) {
    if (!number(v, path)) return false;
    const double d = v.get<double>();
    const bool ok = (lo_open ? d > lo : d >= lo) && (hi_open ? d < hi : d <= hi);
    if (!ok) {
      error(path, "value " + v.dump() + " outside " + std::string(lo_open ? "(" : "[") + format_label(lo) + ", " +
                      (std::isinf(hi) ? "inf" : format_label(hi)) + (hi_open ? ")" : "]"));
    }
    return ok;
  }

  bool integer_at_least(const Json& v, const std::string& path, long long min) {
    const bool whole = v.is_number_integer() || (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()));
    if (!expect(v, path, v.is_number() && whole, "integer")) return false;
    if (v.get<double>() < static_cast<double>(min)) {
      error(path, "value " + v.dump() + " is below the minimum " + std::to_string(min));
      return false;
    }
    return true;
  }

  bool one_of(const Json& v, const std::string& path, const std::vector<std::string>& legal, bool fold_case = false) {
    if (!string(v, path)) return false;
    std::string s = v.get<std::string>();
    if (fold_case) std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (std::find(legal.begin(), legal.end(), s) != legal.end()) return true;
    error(path, "unknown value '" + v.get<std::string>() + "'; expected one of: " + join_list(legal));
    return false;
  }

  bool color(const Json& v, const std::string& path) {
    if (!string(v, path)) return false;
    if (normalize_color(v.get<std::string>())) return true;
    error(path, "'" + v.get<std::string>() + "' is not a color");
    return false;
  }

  const Json* required(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) {
      error(path, "missing required key '" + key + "'");
      return nullptr;
    }
    return &obj.at(key);
  }

  const Json* optional(const Json& obj, const std::string& key) {
    return obj.contains(key) ? &obj.at(key) : nullptr;
  }

  // Arrays are iterated, a lone object is taken as a one-element block.
  template <typename F>
  void entries(const Json& block, const std::string& path, F&& fn) {
    if (block.is_array()) {
      for (std::size_t i = 0; i < block.size(); ++i) fn(block[i], pointer_child(path, i));
    } else if (block.is_object()) {
      fn(block, path);
    } else {
      error(path, "expected array or object, got " + kind_name(block));
    }
  }

 private:
  bool expect(const Json& v, const std::string& path, bool ok, const char* want) {
    if (!ok) error(path, std::string("expected ") + want + ", got " + kind_name(v));
    return ok;
  }
};

bool scalar(const Json& v) { return v.is_string() || v.is_number() || v.is_boolean() || v.is_null(); }

void scan_properties_map(Scanner& s, const Json& props, const std::string& path) {
  if (!s.object(props, path)) return;
  for (auto it = props.begin(); it != props.end(); ++it) {
    if (!scalar(it.value())) s.error(pointer_child(path, it.key()), "property values must be scalars");
  }
}

void scan_function_properties(Scanner& s, const std::string& function, const Json* props, const std::string& path) {
  const std::string ppath = pointer_child(path, "properties");
  if (!props) {
    s.error(path, "missing required key 'properties'");
    return;
  }
  scan_properties_map(s, *props, ppath);
  if (!props->is_object()) return;
  auto need_string = [&](const char* key) {
    if (const Json* v = s.required(*props, ppath, key)) s.string(*v, pointer_child(ppath, key));
  };
  auto need_count = [&](const char* key) {
    if (const Json* v = s.required(*props, ppath, key)) s.integer_at_least(*v, pointer_child(ppath, key), 0);
  };
  if (is_variable_function(function)) {
    need_string("data");
    need_string("field");
    if (function == "pow") {
      if (const Json* v = s.required(*props, ppath, "power")) s.number(*v, pointer_child(ppath, "power"));
    }
  } else if (function == "linspace") {
    for (const char* key : {"start", "stop"}) {
      if (const Json* v = s.required(*props, ppath, key)) s.number(*v, pointer_child(ppath, key));
    }
    if (props->contains("n")) {
      s.integer_at_least(props->at("n"), pointer_child(ppath, "n"), 0);
    } else {
      need_count("length");
    }
  } else {
    need_count("length");
  }
}

const std::vector<std::string> kFunctions = {"pow", "log", "identity", "fibonacci", "fibonnaci", "linspace"};

void scan_function_step(Scanner& s, const Json& t, const std::string& path) {
  s.keys(t, path, {"lang", "function", "properties"});
  if (const Json* lang = s.optional(t, "lang")) {
    const std::string lpath = pointer_child(path, "lang");
    if (s.string(*lang, lpath) && lang->get<std::string>() != "builtin") {
      s.error(lpath, "lang '" + lang->get<std::string>() + "' is not available; only builtin functions run");
    }
  }
  const Json* fn = s.required(t, path, "function");
  if (!fn || !s.one_of(*fn, pointer_child(path, "function"), kFunctions)) return;
  scan_function_properties(s, fn->get<std::string>(), s.optional(t, "properties"), path);
}

void scan_transform(Scanner& s, const Json& t, const std::string& path) {
  if (!s.object(t, path)) return;
  if (!t.contains("type")) {
    scan_function_step(s, t, path);
    return;
  }
  const std::string tpath = pointer_child(path, "type");
  if (!s.one_of(t.at("type"), tpath, {"filter", "group", "join", "cross", "nest"})) return;
  const std::string type = t.at("type").get<std::string>();
  auto need_string = [&](const char* key) -> const Json* {
    const Json* v = s.required(t, path, key);
    if (v && !s.string(*v, pointer_child(path, key))) return nullptr;
    return v;
  };
  auto opt_string = [&](const char* key) {
    if (const Json* v = s.optional(t, key)) s.string(*v, pointer_child(path, key));
  };
  auto string_list = [&](const char* key, std::size_t min, std::size_t max) -> bool {
    const Json* v = s.required(t, path, key);
    const std::string kpath = pointer_child(path, key);
    if (!v || !s.array(*v, kpath)) return false;
    bool ok = true;
    for (std::size_t i = 0; i < v->size(); ++i) ok &= s.string((*v)[i], pointer_child(kpath, i));
    if (v->size() < min || v->size() > max) {
      s.error(kpath, "expected " + std::to_string(min) + " to " + std::to_string(max) + " entries, got " +
                         std::to_string(v->size()));
      ok = false;
    }
    return ok;
  };
  opt_string("name");
  if (type == "filter") {
    s.keys(t, path, {"type", "data", "expr", "name"});
    need_string("data");
    if (const Json* e = need_string("expr")) {
      try {
        Predicate::parse(e->get<std::string>());
      } catch (const Error& err) {
        s.error(pointer_child(path, "expr"), err.what());
      }
    }
  } else if (type == "group") {
    s.keys(t, path, {"type", "data", "keys", "aggregates", "name"});
    need_string("data");
    string_list("keys", 0, SIZE_MAX);
    if (const Json* aggs = s.optional(t, "aggregates")) {
      const std::string apath = pointer_child(path, "aggregates");
      if (s.array(*aggs, apath)) {
        for (std::size_t i = 0; i < aggs->size(); ++i) {
          const Json& a = (*aggs)[i];
          const std::string ap = pointer_child(apath, i);
          if (!s.object(a, ap)) continue;
          s.keys(a, ap, {"field", "stat", "as"});
          if (const Json* f = s.required(a, ap, "field")) s.string(*f, pointer_child(ap, "field"));
          if (const Json* st = s.required(a, ap, "stat"); st && s.string(*st, pointer_child(ap, "stat"))) {
            try {
              parse_stat(st->get<std::string>());
            } catch (const Error& err) {
              s.error(pointer_child(ap, "stat"), std::string(to_string(err.code())) + ": " + err.what() +
                                                     "; expected one of: mean, std, median, min, max, count, sum, "
                                                     "quantile(p)");
            }
          }
          if (const Json* as = s.optional(a, "as")) s.string(*as, pointer_child(ap, "as"));
        }
      }
    }
  } else if (type == "join" || type == "cross") {
    if (type == "join") {
      s.keys(t, path, {"type", "left", "right", "key", "side", "name"});
      need_string("key");
      if (const Json* side = s.optional(t, "side")) s.one_of(*side, pointer_child(path, "side"), {"left", "right"});
    } else {
      s.keys(t, path, {"type", "left", "right", "name"});
    }
    need_string("left");
    need_string("right");
  } else {
    s.keys(t, path, {"type", "data", "x", "y", "fields", "name"});
    need_string("data");
    need_string("x");
    need_string("y");
    const Json* f = s.optional(t, "fields");
    if (f && f->is_array() && f->size() > kGlyphBlocks) {
      s.error(pointer_child(path, "fields"), "TooManyGlyphFields: " + std::to_string(f->size()) +
                                                 " glyph fields, at most 9 fit a 3x3 glyph");
    } else {
      string_list("fields", 1, kGlyphBlocks);
    }
  }
}

void scan_data(Scanner& s, const Json& d, const std::string& path) {
  if (!s.object(d, path)) return;
  s.keys(d, path, {"name", "values", "url", "format"});
  if (const Json* n = s.required(d, path, "name")) s.string(*n, pointer_child(path, "name"));
  const Json* values = s.optional(d, "values");
  const Json* url = s.optional(d, "url");
  if (values && url) {
    s.error(path, "dataset gives both 'values' and 'url'; exactly one data source is allowed");
  } else if (!values && !url) {
    s.error(path, "missing required key 'values' (or 'url')");
  }
  if (values) {
    const std::string vpath = pointer_child(path, "values");
    if (values->is_array()) {
      for (std::size_t i = 0; i < values->size(); ++i) {
        const Json& row = (*values)[i];
        const std::string rpath = pointer_child(vpath, i);
        if (!s.object(row, rpath)) continue;
        for (auto it = row.begin(); it != row.end(); ++it) {
          if (!scalar(it.value())) s.error(pointer_child(rpath, it.key()), "NestedObjectValue: cells must be scalars");
        }
      }
    } else if (!values->is_string()) {
      s.error(vpath, "expected a file name or an array of rows, got " + kind_name(*values));
    }
  }
  if (url) s.string(*url, pointer_child(path, "url"));
  if (const Json* f = s.optional(d, "format")) {
    const std::string fpath = pointer_child(path, "format");
    if (s.object(*f, fpath)) {
      s.keys(*f, fpath, {"type"});
      if (const Json* t = s.optional(*f, "type")) s.one_of(*t, pointer_child(fpath, "type"), {"csv", "tsv", "json"});
    }
  }
}

bool is_number_pair(const Json& v) { return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(); }

void scan_range_value(Scanner& s, const Json& v, const std::string& path, bool continuous) {
  if (v.is_string()) {
    s.one_of(v, path, {"width", "height"});
    return;
  }
  if (!v.is_array()) {
    s.error(path, "expected an array or \"width\"/\"height\", got " + kind_name(v));
    return;
  }
  if (continuous && !is_number_pair(v)) {
    s.error(path, "a continuous range needs [min, max]");
    return;
  }
  if (v.empty()) s.error(path, "range is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number() && !v[i].is_string()) {
      s.error(pointer_child(path, i), "range entries must be numbers or names, got " + kind_name(v[i]));
    }
  }
}

void scan_scale(Scanner& s, const Json& sc, const std::string& path) {
  if (!s.object(sc, path)) return;
  s.keys(sc, path, {"name", "type", "domain", "range", "exponent", "clamp"});
  if (const Json* n = s.required(sc, path, "name")) s.string(*n, pointer_child(path, "name"));
  std::string type;
  if (const Json* t = s.required(sc, path, "type"); t && s.one_of(*t, pointer_child(path, "type"), legal_scale_types())) {
    type = t->get<std::string>();
  }
  const bool ordinal = type == "ordinal";
  const bool quantile = type == "quantile";
  if (const Json* d = s.required(sc, path, "domain")) {
    const std::string dpath = pointer_child(path, "domain");
    if (d->is_object()) {
      s.keys(*d, dpath, {"data", "field"});
      if (const Json* v = s.required(*d, dpath, "data")) s.string(*v, pointer_child(dpath, "data"));
      if (const Json* v = s.required(*d, dpath, "field")) s.string(*v, pointer_child(dpath, "field"));
    } else if (d->is_array()) {
      if (d->empty()) s.error(dpath, "domain is empty");
      for (std::size_t i = 0; i < d->size(); ++i) {
        const Json& e = (*d)[i];
        const std::string epath = pointer_child(dpath, i);
        if (ordinal) {
          if (!e.is_number() && !e.is_string() && !e.is_boolean()) {
            s.error(epath, "categories must be numbers, strings or booleans");
          }
        } else {
          s.number(e, epath);
        }
      }
      if (!ordinal && !quantile && !type.empty() && d->size() != 2) {
        s.error(dpath, "a " + type + " domain needs [min, max]");
      } else if (!ordinal && !quantile && is_number_pair(*d) && (*d)[0].get<double>() > (*d)[1].get<double>()) {
        s.error(dpath, "domain minimum exceeds maximum");
      }
    } else {
      s.error(dpath, "expected {data, field} or an array, got " + kind_name(*d));
    }
  }
  const Json* r = s.optional(sc, "range");
  if (!r && !ordinal) s.error(path, "missing required key 'range'");
  if (r) {
    const std::string rpath = pointer_child(path, "range");
    bool continuous = !ordinal && !quantile;
    if (r->is_object()) {
      s.keys(*r, rpath, {"type", "value"});
      if (const Json* rt = s.optional(*r, "type"); rt && s.one_of(*rt, pointer_child(rpath, "type"), {"range", "discrete"})) {
        continuous = rt->get<std::string>() == "range";
      }
      if (const Json* v = s.required(*r, rpath, "value")) scan_range_value(s, *v, pointer_child(rpath, "value"), continuous);
    } else {
      scan_range_value(s, *r, rpath, continuous);
    }
    if (quantile && ((r->is_object() && r->contains("value") && !r->at("value").is_array()) ||
                     (r->is_object() && r->value("type", "") == "range"))) {
      s.error(rpath, "a quantile scale needs a discrete range");
    }
  }
  if (const Json* e = s.optional(sc, "exponent")) s.number(*e, pointer_child(path, "exponent"));
  if (const Json* c = s.optional(sc, "clamp")) s.boolean(*c, pointer_child(path, "clamp"));
}

void scan_text_style(Scanner& s, const Json& t, const std::string& path, bool annotation) {
  if (!s.object(t, path)) return;
  if (annotation) {
    s.keys(t, path, {"title", "position", "font", "color"});
    if (const Json* v = s.optional(t, "title")) s.string(*v, pointer_child(path, "title"));
    if (const Json* v = s.optional(t, "position")) s.one_of(*v, pointer_child(path, "position"), {"edge", "start"});
  } else {
    s.keys(t, path, {"font", "color"});
  }
  if (const Json* v = s.optional(t, "font")) s.string(*v, pointer_child(path, "font"));
  if (const Json* v = s.optional(t, "color")) s.color(*v, pointer_child(path, "color"));
}

void scan_axis(Scanner& s, const Json& a, const std::string& path) {
  if (!s.object(a, path)) return;
  s.keys(a, path, {"type", "scale", "data", "field", "orient", "grid", "ticks", "text", "annotation", "transform"});
  if (const Json* t = s.required(a, path, "type")) s.one_of(*t, pointer_child(path, "type"), {"x", "y"});
  const Json* scale = s.optional(a, "scale");
  const Json* data = s.optional(a, "data");
  const Json* field = s.optional(a, "field");
  if (scale) s.string(*scale, pointer_child(path, "scale"));
  if (data) s.string(*data, pointer_child(path, "data"));
  if (field) s.string(*field, pointer_child(path, "field"));
  if (scale && data) {
    s.error(path, "axis gives both 'scale' and 'data'; exactly one source is allowed");
  } else if (!scale && !data) {
    s.error(path, "axis needs 'scale' or 'data' with 'field'");
  } else if (data && !field) {
    s.error(path, "missing required key 'field'");
  }
  if (const Json* v = s.optional(a, "orient")) s.one_of(*v, pointer_child(path, "orient"), {"left", "right", "top", "bottom"});
  if (const Json* v = s.optional(a, "grid")) s.boolean(*v, pointer_child(path, "grid"));
  if (const Json* v = s.optional(a, "ticks")) s.integer_at_least(*v, pointer_child(path, "ticks"), 2);
  if (const Json* v = s.optional(a, "text")) scan_text_style(s, *v, pointer_child(path, "text"), false);
  if (const Json* v = s.optional(a, "annotation")) scan_text_style(s, *v, pointer_child(path, "annotation"), true);
  if (const Json* v = s.optional(a, "transform")) {
    const std::string tpath = pointer_child(path, "transform");
    if (s.object(*v, tpath)) {
      s.keys(*v, tpath, {"lang", "function", "properties"});
      if (const Json* lang = s.optional(*v, "lang")) {
        const std::string lpath = pointer_child(tpath, "lang");
        if (s.string(*lang, lpath) && lang->get<std::string>() != "builtin") {
          s.error(lpath, "lang '" + lang->get<std::string>() + "' is not available; only builtin functions run");
        }
      }
      const Json* fn = s.required(*v, tpath, "function");
      if (fn && s.one_of(*fn, pointer_child(tpath, "function"), {"pow", "log", "identity"})) {
        const Json* props = s.optional(*v, "properties");
        const std::string ppath = pointer_child(tpath, "properties");
        if (props) scan_properties_map(s, *props, ppath);
        if (fn->get<std::string>() == "pow") {
          if (!props || !props->is_object()) {
            s.error(tpath, "pow needs properties.power");
          } else if (const Json* p = s.required(*props, ppath, "power")) {
            s.number(*p, pointer_child(ppath, "power"));
          }
        }
      }
    }
  }
}

void scan_axes(Scanner& s, const Json& axes, const std::string& path) {
  if (axes.is_array()) {
    for (std::size_t i = 0; i < axes.size(); ++i) scan_axis(s, axes[i], pointer_child(path, i));
    return;
  }
  if (!axes.is_object()) {
    s.error(path, "expected array or object, got " + kind_name(axes));
    return;
  }
  const Json* t = s.required(axes, path, "type");
  if (!t || !s.one_of(*t, pointer_child(path, "type"), legal_axes_types())) return;
  const std::string type = t->get<std::string>();
  if (type == "x" || type == "y") {
    scan_axis(s, axes, path);
    return;
  }
  s.keys(axes, path, {"type", "properties", "inset"});
  if (const Json* inset = s.optional(axes, "inset")) {
    s.number_in(*inset, pointer_child(path, "inset"), 0.0, 1.0, false, true);
  }
  if (const Json* props = s.optional(axes, "properties")) {
    s.entries(*props, pointer_child(path, "properties"), [&](const Json& a, const std::string& p) { scan_axis(s, a, p); });
  }
  if (type == "coord_parallel" || type == "coord_polar_parallel") {
    const Json* props = s.optional(axes, "properties");
    const std::size_t n = !props ? 0 : props->is_array() ? props->size() : 1;
    if (n < 2) s.error(path, "TooFewAxes: " + type + " needs at least 2 axes in 'properties', got " + std::to_string(n));
  }
}

bool is_required_channel(MarkKind kind, const std::string& ch) {
  switch (kind) {
    case MarkKind::Point:
    case MarkKind::Line:
    case MarkKind::Area:
    case MarkKind::Marks:
    case MarkKind::Picture:
    case MarkKind::Bar:
    case MarkKind::VerticalBar:
    case MarkKind::StackedBar: return ch == "x" || ch == "y";
    case MarkKind::Text: return ch == "x" || ch == "y" || ch == "text";
    case MarkKind::Histogram: return ch == "x";
    case MarkKind::HLine: return ch == "y";
    case MarkKind::VLine: return ch == "x";
    case MarkKind::Arc: return false;
  }
  return false;
}

void scan_channel(Scanner& s, const Json& v, const std::string& path) {
  if (v.is_string() || v.is_number() || v.is_boolean()) return;
  if (!v.is_object()) {
    s.error(path, "expected a scale name, a constant or {scale, field, value}, got " + kind_name(v));
    return;
  }
  s.keys(v, path, {"scale", "field", "value"});
  if (const Json* x = s.optional(v, "scale")) s.string(*x, pointer_child(path, "scale"));
  if (const Json* x = s.optional(v, "field")) s.string(*x, pointer_child(path, "field"));
  if (const Json* x = s.optional(v, "value"); x && !(x->is_number() || x->is_string() || x->is_boolean())) {
    s.error(pointer_child(path, "value"), "expected a number, string or boolean, got " + kind_name(*x));
  }
  if (!v.contains("scale") && !v.contains("field") && !v.contains("value")) {
    s.error(path, "channel needs 'scale', 'field' or 'value'");
  }
  if (v.contains("field") && v.contains("value")) s.error(path, "channel gives both 'field' and 'value'");
}

void scan_geom(Scanner& s, const Json& g, const std::string& path, CoordKind coords) {
  if (!s.object(g, path)) return;
  s.keys(g, path, {"type", "data", "properties"});
  std::optional<MarkKind> kind;
  if (const Json* t = s.required(g, path, "type"); t && s.one_of(*t, pointer_child(path, "type"), legal_geom_types(), true)) {
    kind = mark_kind_from(t->get<std::string>());
  }
  if (const Json* d = s.optional(g, "data")) s.string(*d, pointer_child(path, "data"));
  const std::string ppath = pointer_child(path, "properties");
  const Json empty = Json::object();
  const Json* props = s.optional(g, "properties");
  if (props && !s.object(*props, ppath)) return;
  // no properties object: point at the geom itself
  const std::string need_path = props ? ppath : path;
  if (!props) props = &empty;

  std::vector<std::string> allowed = kChannels;
  allowed.insert(allowed.end(), kGeomParams.begin(), kGeomParams.end());
  s.keys(*props, ppath, allowed);
  for (const auto& ch : kChannels) {
    if (const Json* v = s.optional(*props, ch)) scan_channel(s, *v, pointer_child(ppath, ch));
  }
  if (const Json* v = s.optional(*props, "group")) s.string(*v, pointer_child(ppath, "group"));
  if (const Json* v = s.optional(*props, "bins")) s.integer_at_least(*v, pointer_child(ppath, "bins"), 1);
  if (const Json* v = s.optional(*props, "font")) s.string(*v, pointer_child(ppath, "font"));
  if (const Json* v = s.optional(*props, "anchor")) s.one_of(*v, pointer_child(ppath, "anchor"), {"start", "middle", "end"});
  if (const Json* v = s.optional(*props, "bandFill")) s.number_in(*v, pointer_child(ppath, "bandFill"), 0.0, 1.0, true, false);
  for (const char* key : {"radius", "symbolSize", "strokeWidth"}) {
    if (const Json* v = s.optional(*props, key)) s.number_in(*v, pointer_child(ppath, key), 0.0, INFINITY, false, true);
  }
  if (const Json* v = s.optional(*props, "opacity")) s.number_in(*v, pointer_child(ppath, "opacity"), 0.0, 1.0, false, false);
  if (!kind) return;

  const bool parallel = is_parallel(coords);
  if (parallel) {
    if (*kind != MarkKind::Line && *kind != MarkKind::Point) {
      s.error(pointer_child(path, "type"), "parallel coordinates draw line or point geoms only");
    }
  } else {
    for (const auto& ch : kChannels) {
      if (is_required_channel(*kind, ch) && !props->contains(ch)) {
        s.error(need_path, std::string(to_string(*kind)) + " needs channel '" + ch + "'");
      }
    }
    if (*kind == MarkKind::Arc && !props->contains("theta") && !props->contains("outerRadius")) {
      s.error(need_path, "arc needs channel 'theta' or 'outerRadius'");
    }
    if (*kind == MarkKind::StackedBar && !props->contains("group")) {
      s.error(need_path, "stacked_bar needs a 'group' field");
    }
  }
  // Rules with a constant position may go without data; everything else reads rows.
  bool needs_data = true;
  if (*kind == MarkKind::HLine || *kind == MarkKind::VLine) {
    const Json* pos = s.optional(*props, *kind == MarkKind::HLine ? "y" : "x");
    needs_data = !(pos && (pos->is_number() || (pos->is_object() && pos->contains("value"))));
  }
  if (needs_data && !g.contains("data")) s.error(path, "missing required key 'data'");
}

void scan_guide(Scanner& s, const Json& g, const std::string& path) {
  if (!s.object(g, path)) return;
  s.keys(g, path, {"type", "domain", "scale", "properties"});
  if (const Json* t = s.required(g, path, "type")) s.one_of(*t, pointer_child(path, "type"), {"legend"});
  const Json* domain = s.optional(g, "domain");
  const Json* scale = s.optional(g, "scale");
  if (domain) {
    const std::string dpath = pointer_child(path, "domain");
    if (s.object(*domain, dpath)) {
      s.keys(*domain, dpath, {"scale"});
      if (const Json* v = s.required(*domain, dpath, "scale")) s.string(*v, pointer_child(dpath, "scale"));
    }
  }
  if (scale) s.string(*scale, pointer_child(path, "scale"));
  if (!domain && !scale) s.error(path, "legend needs 'domain': {\"scale\": name}");
  if (domain && scale) s.error(path, "legend gives both 'domain' and 'scale'");
  if (const Json* p = s.optional(g, "properties")) {
    const std::string ppath = pointer_child(path, "properties");
    if (!s.object(*p, ppath)) return;
    s.keys(*p, ppath, {"title", "position", "font"});
    if (const Json* t = s.optional(*p, "title")) {
      const std::string tpath = pointer_child(ppath, "title");
      if (t->is_object()) {
        s.keys(*t, tpath, {"name"});
        if (const Json* n = s.required(*t, tpath, "name")) s.string(*n, pointer_child(tpath, "name"));
      } else {
        s.string(*t, tpath);
      }
    }
    if (const Json* pos = s.optional(*p, "position")) {
      const std::string pp = pointer_child(ppath, "position");
      if (s.object(*pos, pp)) {
        s.keys(*pos, pp, {"x", "y"});
        if (const Json* v = s.required(*pos, pp, "x")) s.number(*v, pointer_child(pp, "x"));
        if (const Json* v = s.required(*pos, pp, "y")) s.number(*v, pointer_child(pp, "y"));
      }
    }
    if (const Json* f = s.optional(*p, "font")) s.string(*f, pointer_child(ppath, "font"));
  }
}

}  // namespace

ScanResult scan(const Json& raw) {
  Scanner s;
  ScanResult out;
  out.spec = normalize_keys(raw);
  const Json& spec = out.spec;
  if (!spec.is_object()) {
    s.error("", "spec must be a JSON object, got " + kind_name(spec));
    out.diagnostics = std::move(s.diags);
    return out;
  }
  s.keys(spec, "", {"width", "height", "padding", "data", "transform", "scales", "axes", "geom", "guides"});
  bool frame_ok = true;
  for (const char* key : {"width", "height"}) {
    if (const Json* v = s.optional(spec, key)) frame_ok &= s.number_in(*v, pointer_child("", key), 0.0, INFINITY, true, true);
  }
  if (const Json* v = s.optional(spec, "padding")) frame_ok &= s.number_in(*v, "/padding", 0.0, INFINITY, false, true);
  if (frame_ok) {
    PlotFrame f;
    f.width = spec.value("width", f.width);
    f.height = spec.value("height", f.height);
    f.padding = spec.value("padding", f.padding);
    if (!f.valid()) s.error(spec.contains("padding") ? "/padding" : "", "padding leaves no room for the plot");
  }

  if (!spec.contains("data")) {
    s.error("", "no data block");
  } else {
    s.entries(spec.at("data"), "/data", [&](const Json& d, const std::string& p) { scan_data(s, d, p); });
  }
  if (const Json* t = s.optional(spec, "transform")) {
    s.entries(*t, "/transform", [&](const Json& e, const std::string& p) { scan_transform(s, e, p); });
  }
  if (const Json* sc = s.optional(spec, "scales")) {
    s.entries(*sc, "/scales", [&](const Json& e, const std::string& p) { scan_scale(s, e, p); });
  }
  CoordKind coords = CoordKind::Cartesian;
  if (const Json* a = s.optional(spec, "axes")) {
    scan_axes(s, *a, "/axes");
    if (a->is_object() && a->contains("type") && a->at("type").is_string()) {
      coords = coord_kind_from(a->at("type").get<std::string>()).value_or(CoordKind::Cartesian);
    }
  }
  if (const Json* g = s.optional(spec, "geom")) {
    s.entries(*g, "/geom", [&](const Json& e, const std::string& p) { scan_geom(s, e, p, coords); });
  }
  if (const Json* g = s.optional(spec, "guides")) {
    s.entries(*g, "/guides", [&](const Json& e, const std::string& p) { scan_guide(s, e, p); });
  }
  out.diagnostics = std::move(s.diags);
  return out;
}

ScanResult scan_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    ScanResult out;
    out.diagnostics.push_back({Severity::Error, Phase::Scan, "", std::string("MalformedJson: ") + e.what()});
    return out;
  }
  return scan(doc);
}

}  // namespace gogc
