#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"

namespace gogc {

namespace {

DataValue json_value(const Json& v) {
  if (v.is_number()) return number_value(v.get<double>());
  if (v.is_boolean()) return bool_value(v.get<bool>());
  if (v.is_string()) return text_value(v.get<std::string>());
  return null_value();
}

// Parallel axes: one scale per axis and the per-record fractions.
struct ParallelState {
  std::vector<std::shared_ptr<const ResolvedScale>> scales;
  RecordFractions fractions;
};

class Assembler {
 public:
  Assembler(const LinkGraph& graph, const SpecTree& tree, const DataSources& sources, std::vector<Diagnostic>& diags)
      : graph_(graph), tree_(tree), sources_(sources), diags_(diags), registry_(sources.registry) {}

  AssembleResult run();

 private:
  void execute(const LinkNode& node, Warnings& w);
  void run_data(const LinkNode& node, Warnings& w);
  void run_transform(const TransformSpec& t, Warnings& w);
  void run_scale(const ScaleSpec& s, Warnings& w);
  void run_frame();
  void run_axis(std::size_t index, Warnings& w);
  void run_geom(std::size_t index, Warnings& w);
  void run_guide(std::size_t index);

  const ParallelState& parallel(Warnings& w);
  std::shared_ptr<const ResolvedScale> implicit_scale(const std::string& name, const std::vector<double>& values,
                                                      NumericPair range, Warnings& w);
  std::vector<double> axis_values(const AxisSpec& axis, const std::string& data, const std::string& field);
  Bindings bindings(const GeomSpec& g) const;

  void put(const std::string& name, DataTable table) {
    if (registry_.contains(name)) {
      registry_.update(name, std::move(table));
    } else {
      registry_.create(name, std::move(table));
    }
  }

  const LinkGraph& graph_;
  const SpecTree& tree_;
  const DataSources& sources_;
  std::vector<Diagnostic>& diags_;
  DataRegistry registry_;
  CoordSystem coords_;
  std::map<std::string, std::shared_ptr<const ResolvedScale>> scales_;
  std::optional<ParallelState> parallel_;
  std::optional<std::string> parallel_error_;
  std::vector<Commands> axis_cmds_, geom_cmds_, guide_cmds_;
};

void Assembler::run_data(const LinkNode& node, Warnings& w) {
  const std::string name = node.id.substr(5);
  const DataSpec* spec = nullptr;
  for (const auto& d : tree_.data) {
    if (d.path == node.path && d.name == name) spec = &d;
  }
  if (!spec) return;  // preloaded table
  std::string text;
  std::string format = spec->format;
  if (spec->inline_rows) {
    text = spec->inline_rows->dump();
    format = "json";
  } else {
    auto bytes = sources_.read(*spec->file);
    if (!bytes) fail(ErrorCode::UnknownDataset, "cannot read data file '" + *spec->file + "'");
    text = std::move(*bytes);
  }
  DataTable table = format == "json" ? load_json(text, name, &w)
                                     : load_csv(text, name, format == "tsv" ? TextFormat::Tsv : TextFormat::Csv, &w);
  put(name, std::move(table));
}

void Assembler::run_transform(const TransformSpec& t, Warnings& w) {
  DataTable out;
  switch (t.kind) {
    case TransformKind::Filter: out = apply_filter(registry_.read(t.data), t.expr); break;
    case TransformKind::Group: out = apply_group(registry_.read(t.data), t.keys, t.aggregates); break;
    case TransformKind::Join:
      out = algebra_join(registry_.read(t.data), registry_.read(t.right), t.key, t.side, &w);
      break;
    case TransformKind::Cross: out = algebra_cross(registry_.read(t.data), registry_.read(t.right)); break;
    case TransformKind::Nest: {
      const auto glyphs = algebra_nest(registry_.read(t.data), t.x, t.y, t.fields);
      std::vector<std::string> names = {"x", "y", "row"};
      for (std::size_t i = 0; i < kGlyphBlocks; ++i) names.push_back("level_" + std::to_string(i));
      std::vector<Row> rows;
      for (const auto& g : glyphs) {
        Row r = {number_value(g.x), number_value(g.y), number_value(static_cast<double>(g.row))};
        for (double l : g.levels) r.push_back(number_value(l));
        rows.push_back(std::move(r));
      }
      std::vector<Column> cols;
      for (auto& n : names) cols.push_back({n, ColumnType::Number});
      out = DataTable::with_columns(t.output(), std::move(cols), std::move(rows));
      break;
    }
    case TransformKind::Variable:
      out = apply_variable_transform(registry_.read(t.data), VariableTransform{t.function, t.properties}, t.field);
      break;
    case TransformKind::Generator: out = run_generator(t.function, t.properties); break;
  }
  put(t.output(), std::move(out));
}

void Assembler::run_scale(const ScaleSpec& s, Warnings& w) {
  ScaleDef def = s.def;
  if (const auto* e = std::get_if<NamedExtent>(&def.range)) def.range = NumericPair{0.0, coords_.extent(*e)};
  ResolvedDomain domain = resolve_domain(def, registry_, &w);
  const std::string name = def.name;  // def is moved below
  scales_[name] = std::make_shared<const ResolvedScale>(std::move(def), std::move(domain));
}

void Assembler::run_frame() {
  if (tree_.axes.kind != CoordKind::Equal) return;
  // One data unit gets the same pixel length along x and y.
  std::vector<std::string> xs, ys;
  auto note = [&](std::vector<std::string>& v, const std::string& name) {
    if (scales_.count(name) && std::find(v.begin(), v.end(), name) == v.end()) v.push_back(name);
  };
  for (const auto& a : tree_.axes.axes) {
    if (a.spec.scale) note(a.spec.dim == AxisDim::X ? xs : ys, *a.spec.scale);
  }
  for (const auto& g : tree_.geoms) {
    for (const char* ch : {"x", "y"}) {
      auto it = g.channels.find(ch);
      if (it != g.channels.end() && it->second.scale) note(ch[0] == 'x' ? xs : ys, *it->second.scale);
    }
  }
  if (xs.empty() || ys.empty()) return;
  const EqualFit fit = fit_equal(coords_.frame(), scales_.at(xs.front())->domain().extent,
                                 scales_.at(ys.front())->domain().extent);
  auto refit = [&](const std::vector<std::string>& names, NumericPair range) {
    for (const auto& n : names) {
      const ResolvedScale& old = *scales_.at(n);
      ScaleDef def = old.def();
      def.range = range;
      scales_[n] = std::make_shared<const ResolvedScale>(std::move(def), old.domain());
    }
  };
  refit(xs, fit.x_range);
  refit(ys, fit.y_range);
}

std::vector<double> Assembler::axis_values(const AxisSpec& axis, const std::string& data, const std::string& field) {
  std::vector<double> values = registry_.read(data).numeric_values(field);
  if (axis.transform) {
    for (double& v : values) v = apply_variable_function(*axis.transform, v);
  }
  return values;
}

std::shared_ptr<const ResolvedScale> Assembler::implicit_scale(const std::string& name, const std::vector<double>& values,
                                                               NumericPair range, Warnings& w) {
  if (values.empty()) fail(ErrorCode::AllNull, "axis field has no values");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  ScaleDef def;
  def.name = name;
  def.kind = ScaleKind::Linear;
  def.domain = std::vector<double>{*lo, *hi};
  def.range = range;
  ResolvedDomain domain = resolve_domain(def, registry_, &w);
  return std::make_shared<const ResolvedScale>(std::move(def), std::move(domain));
}

const ParallelState& Assembler::parallel(Warnings& w) {
  if (parallel_) return *parallel_;
  if (parallel_error_) fail(ErrorCode::IllegalLink, "parallel axes failed earlier: " + *parallel_error_);
  try {
    ParallelState st;
    std::string data;
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < tree_.axes.axes.size(); ++i) {
      const AxisSpec& a = tree_.axes.axes[i].spec;
      std::optional<std::string> d = a.data, f = a.field;
      std::shared_ptr<const ResolvedScale> scale;
      if (a.scale) {
        scale = scales_.at(*a.scale);
        if (const auto* ref = std::get_if<DomainRef>(&scale->def().domain)) {
          if (!d) d = ref->data;
          if (!f) f = ref->field;
        }
        if (!scale->continuous_range()) {
          fail(ErrorCode::IllegalLink, "parallel axis scale '" + scale->name() + "' needs a [min, max] range");
        }
      }
      data = *d;
      fields.push_back(*f);
      if (!scale) scale = implicit_scale("axis:" + std::to_string(i), axis_values(a, *d, *f), {0.0, 1.0}, w);
      st.scales.push_back(scale);
    }
    const DataTable& table = registry_.read(data);
    std::vector<std::size_t> cols;
    for (const auto& f : fields) cols.push_back(table.column_index(f));
    for (std::size_t r = 0; r < table.row_count(); ++r) {
      std::vector<double> fr;
      bool complete = true;
      for (std::size_t i = 0; i < cols.size() && complete; ++i) {
        DataValue cell = table.at(r, cols[i]);
        if (is_null(cell)) {
          complete = false;
          break;
        }
        const AxisSpec& a = tree_.axes.axes[i].spec;
        if (a.transform && is_number(cell)) cell = number_value(apply_variable_function(*a.transform, std::get<double>(cell)));
        const ResolvedScale& s = *st.scales[i];
        const NumericPair range = s.range_pair();
        fr.push_back((s.map_number(cell) - range.lo) / (range.hi - range.lo));
      }
      if (complete) {
        st.fractions.push_back(std::move(fr));
      } else {
        st.fractions.push_back(std::nullopt);
      }
    }
    parallel_ = std::move(st);
    return *parallel_;
  } catch (const Error& e) {
    parallel_error_ = e.what();
    throw;
  }
}

void Assembler::run_axis(std::size_t index, Warnings& w) {
  const AxisEntry& a = tree_.axes.axes[index];
  std::shared_ptr<const ResolvedScale> scale;
  if (is_parallel(coords_.kind())) {
    scale = parallel(w).scales[index];
  } else if (a.spec.scale) {
    scale = scales_.at(*a.spec.scale);
  } else {
    const bool x = a.spec.dim == AxisDim::X;
    const double ext = x ? coords_.u_extent() : coords_.v_extent();
    scale = implicit_scale("axis:" + std::to_string(index), axis_values(a.spec, *a.spec.data, *a.spec.field),
                           {0.0, ext}, w);
  }
  axis_cmds_[index] = render_axis(a.spec, scale.get(), coords_, index);
}

Bindings Assembler::bindings(const GeomSpec& g) const {
  Bindings b;
  for (const auto& [name, ch] : g.channels) {
    std::shared_ptr<const ResolvedScale> scale;
    if (ch.scale) scale = scales_.at(*ch.scale);
    if (ch.value) {
      if (scale) {
        b[name] = Channel::of_constant(scale->map(json_value(*ch.value)));
      } else if (ch.value->is_number()) {
        b[name] = Channel::of_constant(ch.value->get<double>());
      } else {
        b[name] = Channel::of_constant(display(json_value(*ch.value)));
      }
    } else if (scale) {
      b[name] = Channel::of_scale(scale, ch.field);
    } else if (ch.field) {
      b[name] = Channel::of_field(*ch.field);
    }
  }
  return b;
}

void Assembler::run_geom(std::size_t index, Warnings& w) {
  const GeomSpec& g = tree_.geoms[index];
  const Bindings b = bindings(g);
  const DataTable* table = g.data ? &registry_.read(*g.data) : nullptr;
  Commands& out = geom_cmds_[index];
  if (is_parallel(coords_.kind())) {
    const ParallelState& st = parallel(w);
    out = geom_parallel(*table, st.fractions, b, coords_, g.kind, g.params, &w);
    return;
  }
  switch (g.kind) {
    case MarkKind::Point: out = geom_point(*table, b, coords_, g.params, &w); break;
    case MarkKind::Line: out = geom_line(*table, b, coords_, g.params, &w); break;
    case MarkKind::Area: out = geom_area(*table, b, coords_, g.params, &w); break;
    case MarkKind::Bar: out = geom_bar(*table, b, coords_, BarVariant::Bar, g.params, &w); break;
    case MarkKind::VerticalBar: out = geom_bar(*table, b, coords_, BarVariant::Vertical, g.params, &w); break;
    case MarkKind::StackedBar: out = geom_bar(*table, b, coords_, BarVariant::Stacked, g.params, &w); break;
    case MarkKind::Histogram: out = geom_bar(*table, b, coords_, BarVariant::Histogram, g.params, &w); break;
    case MarkKind::Arc: out = geom_arc(*table, b, coords_, g.params, &w); break;
    case MarkKind::HLine: out = geom_rule(table, b, coords_, RuleOrientation::Horizontal, g.params, &w); break;
    case MarkKind::VLine: out = geom_rule(table, b, coords_, RuleOrientation::Vertical, g.params, &w); break;
    case MarkKind::Text: out = geom_text(*table, b, coords_, g.params, &w); break;
    case MarkKind::Marks: out = geom_marks(*table, b, coords_, g.params, &w); break;
    case MarkKind::Picture: {
      std::vector<std::size_t> cols;
      for (std::size_t i = 0; i < kGlyphBlocks; ++i) {
        auto c = table->find_column("level_" + std::to_string(i));
        if (!c) fail(ErrorCode::BadProperties, "picture needs a dataset produced by a nest step");
        cols.push_back(*c);
      }
      const std::size_t xc = table->column_index("x"), yc = table->column_index("y");
      std::vector<NestGlyph> glyphs;
      for (std::size_t r = 0; r < table->row_count(); ++r) {
        NestGlyph gl;
        gl.x = std::get<double>(table->at(r, xc));
        gl.y = std::get<double>(table->at(r, yc));
        gl.row = r;
        for (std::size_t i = 0; i < kGlyphBlocks; ++i) gl.levels[i] = std::get<double>(table->at(r, cols[i]));
        glyphs.push_back(gl);
      }
      out = geom_picture(glyphs, b, coords_, g.params);
      break;
    }
  }
}

void Assembler::run_guide(std::size_t index) {
  const GuideEntry& g = tree_.guides[index];
  guide_cmds_[index] = render_legend(g.spec, *scales_.at(g.spec.scale), coords_.frame());
}

void Assembler::execute(const LinkNode& node, Warnings& w) {
  switch (node.kind) {
    case NodeKind::Data: run_data(node, w); break;
    case NodeKind::Transform: run_transform(tree_.transforms[node.index], w); break;
    case NodeKind::Scale: {
      for (const auto& s : tree_.scales) {
        if ("scale:" + s.def.name == node.id) run_scale(s, w);
      }
      break;
    }
    case NodeKind::Frame: run_frame(); break;
    case NodeKind::Axis: run_axis(node.index, w); break;
    case NodeKind::Geom: run_geom(node.index, w); break;
    case NodeKind::Guide: run_guide(node.index); break;
  }
}

AssembleResult Assembler::run() {
  AssembleResult result;
  result.scene.width = tree_.frame.width;
  result.scene.height = tree_.frame.height;
  try {
    coords_ = tree_.coord_system();
  } catch (const Error& e) {
    diags_.push_back({Severity::Error, Phase::Assemble, tree_.axes.path,
                      std::string(to_string(e.code())) + ": " + e.what()});
    return result;
  }
  axis_cmds_.assign(tree_.axes.axes.size(), {});
  geom_cmds_.assign(tree_.geoms.size(), {});
  guide_cmds_.assign(tree_.guides.size(), {});

  std::vector<std::vector<std::size_t>> providers(graph_.nodes.size());
  for (const auto& [dep, prov] : graph_.edges) providers[dep].push_back(prov);
  std::vector<bool> failed(graph_.nodes.size(), false);

  for (std::size_t n : graph_.execution_order()) {
    const LinkNode& node = graph_.nodes[n];
    // Nodes downstream of a failure are skipped without further noise.
    if (std::any_of(providers[n].begin(), providers[n].end(), [&](std::size_t p) { return failed[p]; })) {
      failed[n] = true;
      continue;
    }
    Warnings w;
    try {
      execute(node, w);
      result.execution_order.push_back(node.id);
    } catch (const Error& e) {
      failed[n] = true;
      diags_.push_back({Severity::Error, Phase::Assemble, node.path, std::string(to_string(e.code())) + ": " + e.what()});
    }
    for (auto& msg : w) diags_.push_back({Severity::Warning, Phase::Assemble, node.path, std::move(msg)});
  }

  for (auto* bucket : {&axis_cmds_, &geom_cmds_, &guide_cmds_}) {
    for (auto& cmds : *bucket) {
      for (auto& c : cmds) result.scene.commands.push_back(std::move(c));
    }
  }
  if (parallel_) result.fractions = parallel_->fractions;
  result.registry = std::move(registry_);
  return result;
}

}  // namespace

AssembleResult assemble(const LinkGraph& graph, const SpecTree& tree, const DataSources& sources,
                        std::vector<Diagnostic>& diagnostics) {
  return Assembler(graph, tree, sources, diagnostics).run();
}

}  // namespace gogc
