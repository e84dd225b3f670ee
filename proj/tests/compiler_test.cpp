#include <doctest.h>

#include <algorithm>
#include <regex>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"
#include "gogc/style.hpp"
#include "support.hpp"

using namespace gogc;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "data": [{"name": "d", "values": [{"a": 1, "b": 2}, {"a": 3, "b": 5}]}],
  "scales": [{"name": "x", "type": "linear", "range": "width", "domain": {"data": "d", "field": "a"}}],
  "axes": [{"type": "x", "scale": "x"}],
  "geom": [{"type": "point", "data": "d", "properties": {"x": {"scale": "x", "field": "a"}, "y": {"field": "b"}}}]
})";

CompileResult run(const std::string& text) { return compile(text, DataSources{}); }
CompileResult run(const Json& doc, const DataSources& src = {}) { return compile_json(doc, src); }

std::vector<Diagnostic> errors(const CompileResult& r) {
  std::vector<Diagnostic> out;
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::Error) out.push_back(d);
  }
  return out;
}

bool has_default(const CompileResult& r, const std::string& path, const Json& value) {
  for (const auto& d : r.tree->defaults) {
    if (d.path == path && d.value == value) return true;
  }
  return false;
}

std::size_t position(const std::vector<std::string>& order, const std::string& id) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), id) - order.begin());
}

}  // namespace

TEST_SUITE("compiler") {

TEST_CASE("a misspelt scale type names the path and the legal values") {
  Json doc = Json::parse(kMinimal);
  doc["scales"][0]["type"] = "linnear";
  CompileResult r = run(doc);
  auto e = errors(r);
  REQUIRE(e.size() == 1);
  CHECK(e[0].phase == Phase::Scan);
  CHECK(e[0].path == "/scales/0/type");
  for (const auto& t : legal_scale_types()) CHECK(e[0].message.find(t) != std::string::npos);
  CHECK(r.scene.commands.empty());
}

TEST_CASE("a dataset with two sources is rejected") {
  Json doc = Json::parse(kMinimal);
  doc["data"][0]["values"] = "f.csv";
  doc["data"][0]["url"] = "g.csv";
  auto e = errors(run(doc));
  REQUIRE(e.size() == 1);
  CHECK(e[0].path == "/data/0");
  CHECK(e[0].message.find("exactly one") != std::string::npos);
}

TEST_CASE("scan collects every error of the phase") {
  Json doc = Json::parse(kMinimal);
  doc["scales"][0]["type"] = "linnear";
  doc["geom"][0]["type"] = "sparkle";
  doc["width"] = "wide";
  CHECK(errors(run(doc)).size() == 3);
}

TEST_CASE("unknown keys warn") {
  Json doc = Json::parse(kMinimal);
  doc["geom"][0]["colour_scheme"] = 1;
  CompileResult r = run(doc);
  CHECK(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].severity == Severity::Warning);
  CHECK(r.diagnostics[0].path == "/geom/0/colour_scheme");
}

TEST_CASE("omitted fill color, size and transform are filled and recorded") {
  CompileResult r = run(std::string(kMinimal));
  REQUIRE(r.ok());
  CHECK(r.scene.width == 600.0);
  CHECK(r.scene.height == 400.0);
  CHECK(r.tree->transforms.empty());
  CHECK(has_default(r, "/geom/0/properties/fillColor", std::string(kPalette[0])));
  CHECK(has_default(r, "/width", 600.0));
  CHECK(has_default(r, "/transform", Json::array()));
}

TEST_CASE("empty spec") {
  auto e = errors(run(std::string("{}")));
  REQUIRE(e.size() == 1);
  CHECK(e[0].message == "no data block");
  CHECK(e[0].path == "");
}

TEST_CASE("malformed json is one scan error at the root") {
  auto r = run(std::string("{\"data\": ["));
  auto e = errors(r);
  REQUIRE(e.size() == 1);
  CHECK(e[0].phase == Phase::Scan);
  CHECK(e[0].path == "");
}

TEST_CASE("dangling scale reference") {
  Json doc = Json::parse(kMinimal);
  doc["axes"][0]["scale"] = "zscale";
  CompileResult r = run(doc);
  auto e = errors(r);
  REQUIRE(e.size() == 1);
  CHECK(e[0].phase == Phase::Link);
  CHECK(e[0].path == "/axes/0/scale");
  CHECK(e[0].message.rfind("UnknownScale: ", 0) == 0);
}

TEST_CASE("color scale on an axis is an illegal link") {
  Json doc = Json::parse(kMinimal);
  doc["scales"].push_back(Json{{"name", "c"}, {"type", "ordinal"}, {"domain", Json::array({"u", "v"})},
                               {"range", Json::array({"red", "blue"})}});
  doc["axes"][0]["scale"] = "c";
  auto e = errors(run(doc));
  REQUIRE(e.size() == 1);
  CHECK(e[0].message.rfind("IllegalLink: ", 0) == 0);
  CHECK(e[0].path == "/axes/0/scale");
}

TEST_CASE("unused scales warn") {
  Json doc = Json::parse(kMinimal);
  doc["scales"].push_back(Json{{"name", "idle"}, {"type", "linear"}, {"range", "height"}, {"domain", Json::array({0, 1})}});
  CompileResult r = run(doc);
  CHECK(r.ok());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].path == "/scales/1");
}

TEST_CASE("geom to scale edge") {
  CompileResult r = run(std::string(kMinimal));
  REQUIRE(r.graph);
  auto g = r.graph->find("geom:0"), s = r.graph->find("scale:x");
  REQUIRE(g);
  REQUIRE(s);
  CHECK(std::count(r.graph->edges.begin(), r.graph->edges.end(), std::pair{*g, *s}) == 1);
}

TEST_CASE("execution order runs scales before axes before geoms") {
  CompileResult r = run(std::string(kMinimal));
  CHECK(r.execution_order == std::vector<std::string>{"data:d", "scale:x", "frame", "axis:0", "geom:0"});
}

TEST_CASE("geoms paint in declaration order") {
  Json doc = Json::parse(kMinimal);
  doc.erase("axes");
  Json second = doc["geom"][0];
  second["type"] = "marks";
  doc["geom"].push_back(second);
  CompileResult r = run(doc);
  REQUIRE(r.scene.commands.size() == 4);
  CHECK(std::holds_alternative<CircleCmd>(r.scene.commands[1]));
  CHECK(std::holds_alternative<PathCmd>(r.scene.commands[2]));
}

TEST_CASE("a transform feeding a scale runs first") {
  Json doc = Json::parse(kMinimal);
  doc["transform"] = Json::array({Json{{"type", "filter"}, {"data", "d"}, {"expr", "a > 1"}, {"name", "big"}}});
  doc["scales"][0]["domain"]["data"] = "big";
  CompileResult r = run(doc);
  REQUIRE(r.ok());
  CHECK(position(r.execution_order, "transform:0") < position(r.execution_order, "scale:x"));
}

TEST_CASE("assemble errors carry the layer path") {
  Json doc = Json::parse(kMinimal);
  doc["geom"][0]["properties"]["y"] = Json{{"field", "nope"}};
  auto e = errors(run(doc));
  REQUIRE(e.size() == 1);
  CHECK(e[0].phase == Phase::Assemble);
  CHECK(e[0].path == "/geom/0");
}

TEST_CASE("paths keep the user's colour spelling") {
  Json doc = Json::parse(kMinimal);
  doc["axes"][0]["annotation"] = Json{{"title", "t"}, {"colour", 5}};
  CompileResult r = run(doc);
  auto e = errors(r);
  REQUIRE(e.size() == 1);
  CHECK(e[0].path == "/axes/0/annotation/colour");
  CHECK(testing::pointer_resolves(doc, e[0].path));
}

TEST_CASE("compilation is deterministic") {
  const std::string text = kMinimal;
  CompileResult a = run(text), b = run(text);
  CHECK(a.scene == b.scene);
  CHECK(a.diagnostics == b.diagnostics);
  CHECK(emit_svg(a.scene) == emit_svg(b.scene));
}

TEST_CASE("a cycle is rejected") {
  LinkGraph g;
  g.nodes = {{"a", NodeKind::Transform, 0, "/transform/0"}, {"b", NodeKind::Transform, 1, "/transform/1"}};
  g.edges = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(g.execution_order(), Error);
}

TEST_CASE("the defaults ledger matches what the parser fills") {
  const Json ledger = Json::parse(testing::read_file(testing::source_dir() / "docs" / "defaults.json"));
  auto pattern = [](const std::string& p) {
    return std::regex("^" + std::regex_replace(p, std::regex(R"(\*)"), "[0-9]+") + "$");
  };
  std::vector<std::pair<fs::path, fs::path>> specs;
  for (const auto& s : testing::gallery_specs()) specs.emplace_back(s, testing::gallery_dir() / "data");
  for (const auto& e : fs::directory_iterator(testing::conformance_dir())) {
    if (e.path().extension() == ".json" && e.path().filename() != "matrix.json") {
      specs.emplace_back(e.path(), testing::conformance_dir());
    }
  }
  std::size_t checked = 0;
  for (const auto& [spec, dir] : specs) {
    auto c = testing::compile_file(spec, dir);
    REQUIRE(c.result.tree);
    for (const auto& d : c.result.tree->defaults) {
      bool listed = false, value_ok = false, ruled = false;
      for (const auto& entry : ledger) {
        for (const auto& p : entry.at("paths")) {
          if (!std::regex_match(d.path, pattern(p.get<std::string>()))) continue;
          listed = true;
          if (entry.contains("value")) value_ok |= entry.at("value") == d.value;
          else ruled = true;
        }
      }
      INFO(spec.filename().string() << " " << d.path << " = " << d.value.dump());
      CHECK(listed);
      CHECK((value_ok || ruled));
      ++checked;
    }
  }
  CHECK(checked > 100);
  // constants the ledger quotes
  auto value_of = [&](const std::string& name) {
    for (const auto& e : ledger) {
      if (e.at("name") == name) return e.at("value");
    }
    return Json();
  };
  CHECK(value_of("width") == defaults::kWidth);
  CHECK(value_of("point radius") == defaults::kPointRadius);
  CHECK(value_of("axis ticks") == defaults::kTicks);
  CHECK(value_of("bar band fill") == defaults::kBandFill);
  CHECK(value_of("fill color") == std::string(kPalette[0]));
}

TEST_CASE("property: random specs compile and run in topological order") {
  testing::Rng rng(61);
  for (int iter = 0; iter < 300; ++iter) {
    DataSources src;
    const Json spec = testing::random_spec(rng, src);
    CompileResult r = run(spec, src);
    INFO(spec.dump() << "\n" << testing::diagnostics_text(r.diagnostics));
    REQUIRE(r.ok());
    REQUIRE(r.graph);
    std::vector<std::size_t> order;
    for (const auto& id : r.execution_order) order.push_back(*r.graph->find(id));
    CHECK(order.size() == r.graph->nodes.size());
    CHECK(r.graph->is_topological(order));
    // every provider strictly before its dependents, checked directly
    for (const auto& [dep, prov] : r.graph->edges) {
      CHECK(position(r.execution_order, r.graph->nodes[prov].id) < position(r.execution_order, r.graph->nodes[dep].id));
    }
    // stages never go backwards except where a dependency forces it
    for (std::size_t i = 1; i < order.size(); ++i) {
      const auto& a = r.graph->nodes[order[i - 1]];
      const auto& b = r.graph->nodes[order[i]];
      if (a.kind == NodeKind::Transform || b.kind == NodeKind::Transform) continue;
      CHECK(static_cast<int>(a.kind) <= static_cast<int>(b.kind));
    }
  }
}

TEST_CASE("property: diagnostic paths of broken specs resolve into the input") {
  testing::Rng rng(62);
  std::size_t with_errors = 0;
  for (int iter = 0; iter < 400; ++iter) {
    DataSources src;
    const Json broken = testing::mutate_spec(rng, testing::random_spec(rng, src));
    CompileResult r = run(broken, src);
    with_errors += !r.ok();
    for (const auto& d : r.diagnostics) {
      INFO(broken.dump() << "\n" << to_json_line(d));
      CHECK(testing::pointer_resolves(broken, d.path));
    }
  }
  CHECK(with_errors > 100);
}

}  // TEST_SUITE
