#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <sstream>

#include "support.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("gogc_cli_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

Run cli(const std::string& args) {
  const fs::path dir = scratch();
  const std::string cmd = std::string("\"") + GOGC_CLI + "\" " + args + " >\"" + (dir / "stdout").string() + "\" 2>\"" +
                          (dir / "stderr").string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::read_file(dir / "stdout");
  r.err = testing::read_file(dir / "stderr");
  return r;
}

std::vector<gogc::Json> json_lines(const std::string& text) {
  std::vector<gogc::Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(gogc::Json::parse(line));
  return out;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const char* kGood = R"({"data": [{"name": "d", "values": [{"a": 1}, {"a": 2}]}],
  "geom": [{"type": "point", "data": "d", "properties": {"x": {"field": "a"}, "y": {"field": "a"}}}]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compile writes svg and exits 0") {
  const fs::path dir = scratch();
  testing::write_file(dir / "good.json", kGood);
  fs::remove(dir / "good.svg");
  Run r = cli("compile --spec " + q(dir / "good.json") + " --out " + q(dir / "good.svg"));
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  REQUIRE(fs::exists(dir / "good.svg"));
  CHECK(testing::read_file(dir / "good.svg").rfind("<?xml", 0) == 0);
}

TEST_CASE("svg to stdout with --out -") {
  const fs::path dir = scratch();
  testing::write_file(dir / "good.json", kGood);
  Run r = cli("compile --spec " + q(dir / "good.json") + " --out -");
  CHECK(r.code == 0);
  CHECK(r.out == testing::compile_text(kGood, dir).svg);
}

TEST_CASE("unknown scale exits 1 with one json diagnostic") {
  const fs::path dir = scratch();
  gogc::Json doc = gogc::Json::parse(kGood);
  doc["geom"][0]["properties"]["x"]["scale"] = "zscale";
  testing::write_file(dir / "bad.json", doc.dump());
  fs::remove(dir / "bad.svg");
  Run r = cli("compile --spec " + q(dir / "bad.json") + " --out " + q(dir / "bad.svg"));
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(dir / "bad.svg"));
  auto lines = json_lines(r.err);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["severity"] == "error");
  CHECK(lines[0]["phase"] == "link");
  CHECK(lines[0]["path"] == "/geom/0/properties/x/scale");
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli("compile --out x.svg").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("render --spec a.json").code == 2);
  CHECK(cli("validate --spec /nonexistent/spec.json").code == 2);
}

TEST_CASE("validate reports warnings and never writes output") {
  const fs::path dir = scratch() / "validate";
  fs::create_directories(dir);
  gogc::Json doc = gogc::Json::parse(kGood);
  doc["extra"] = true;
  testing::write_file(dir / "warn.json", doc.dump());
  const auto before = std::distance(fs::directory_iterator(dir), fs::directory_iterator{});
  Run r = cli("validate --spec " + q(dir / "warn.json"));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  auto lines = json_lines(r.err);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["severity"] == "warning");
  CHECK(lines[0].size() == 4);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == before);
}

TEST_CASE("relative data paths resolve against --data-dir, else the spec directory") {
  const fs::path dir = scratch();
  fs::create_directories(dir / "sub");
  testing::write_file(dir / "sub" / "t.csv", "a\n1\n2\n");
  gogc::Json doc = gogc::Json::parse(kGood);
  doc["data"][0]["values"] = "t.csv";
  testing::write_file(dir / "sub" / "rel.json", doc.dump());
  testing::write_file(dir / "rel.json", doc.dump());
  CHECK(cli("validate --spec " + q(dir / "sub" / "rel.json")).code == 0);
  CHECK(cli("validate --spec " + q(dir / "rel.json")).code == 1);
  CHECK(cli("validate --spec " + q(dir / "rel.json") + " --data-dir " + q(dir / "sub")).code == 0);
}

TEST_CASE("debug prints one json summary per phase") {
  const fs::path dir = scratch();
  testing::write_file(dir / "good.json", kGood);
  Run r = cli("compile --debug --spec " + q(dir / "good.json") + " --out " + q(dir / "dbg.svg"));
  CHECK(r.code == 0);
  auto lines = json_lines(r.err);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0]["phase"] == "scan");
  CHECK(lines[1]["defaults_filled"].get<int>() > 0);
  CHECK(lines[2]["edges"].get<int>() > 0);
  CHECK(lines[3]["execution_order"].size() == 3);
}

}  // TEST_SUITE
