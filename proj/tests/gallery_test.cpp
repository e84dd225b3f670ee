#include <doctest.h>

#include <cstdlib>
#include <cstring>

#include "support.hpp"

namespace {

namespace fs = std::filesystem;

fs::path data_dir() { return testing::gallery_dir() / "data"; }
fs::path golden_for(const fs::path& spec) {
  return testing::gallery_dir() / "golden" / (spec.stem().string() + ".svg");
}

bool updating() {
  const char* v = std::getenv("GOGC_UPDATE_GOLDEN");
  return v && std::strcmp(v, "1") == 0;
}

}  // namespace

TEST_SUITE("gallery") {

TEST_CASE("every gallery spec compiles without errors") {
  const auto specs = testing::gallery_specs();
  CHECK(specs.size() >= 10);
  for (const auto& spec : specs) {
    auto c = testing::compile_file(spec, data_dir());
    INFO(spec.filename().string() << "\n" << testing::diagnostics_text(c.result.diagnostics));
    CHECK(c.result.ok());
    CHECK_FALSE(c.result.scene.commands.empty());
  }
}

TEST_CASE("golden svgs match byte for byte") {
  std::size_t compared = 0;
  for (const auto& spec : testing::gallery_specs()) {
    auto c = testing::compile_file(spec, data_dir());
    REQUIRE(c.result.ok());
    const fs::path golden = golden_for(spec);
    if (updating()) testing::write_file(golden, c.svg);
    INFO(golden.string());
    REQUIRE(fs::exists(golden));
    CHECK(c.svg == testing::read_file(golden));
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("two runs give identical bytes") {
  for (const auto& spec : testing::gallery_specs()) {
    INFO(spec.filename().string());
    CHECK(testing::compile_file(spec, data_dir()).svg == testing::compile_file(spec, data_dir()).svg);
  }
}

TEST_CASE("writing the filled defaults into the spec changes nothing") {
  for (const auto& spec : testing::gallery_specs()) {
    const gogc::Json doc = gogc::Json::parse(testing::read_file(spec));
    auto implicit = testing::compile_doc(doc, data_dir());
    REQUIRE(implicit.result.tree);
    const gogc::Json full = testing::with_explicit_defaults(doc, implicit.result.tree->defaults);
    auto explicit_ = testing::compile_doc(full, data_dir());
    INFO(spec.filename().string() << "\n" << testing::diagnostics_text(explicit_.result.diagnostics));
    CHECK(explicit_.result.ok());
    CHECK(explicit_.svg == implicit.svg);
    // nothing left to fill
    CHECK(explicit_.result.tree->defaults.empty());
  }
}

TEST_CASE("polar and cartesian parallel coordinates share record fractions") {
  auto polar = testing::compile_file(testing::gallery_dir() / "polar-parallel.json", data_dir());
  auto flat = testing::compile_file(testing::gallery_dir() / "parallel.json", data_dir());
  REQUIRE(polar.result.ok());
  REQUIRE(flat.result.ok());
  REQUIRE(polar.result.fractions.size() == 32);
  CHECK(polar.result.fractions == flat.result.fractions);
  CHECK(polar.svg != flat.svg);
  // the car with a missing value has no polyline
  std::size_t missing = 0;
  for (const auto& f : polar.result.fractions) missing += !f.has_value();
  CHECK(missing == 1);
}

}  // TEST_SUITE
