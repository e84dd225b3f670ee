// gogc: compile a chart spec to SVG, or only check it.
//
//   gogc compile --spec chart.json --out chart.svg [--data-dir DIR] [--debug]
//   gogc validate --spec chart.json [--data-dir DIR]
//
// Diagnostics go to stderr as JSON lines. Exit 0 on success, 1 when any
// error diagnostic was produced, 2 on usage errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gogc/compiler.hpp"
#include "gogc/error.hpp"
#include "gogc/svg.hpp"

namespace {

int run(const std::string& spec_path, const std::string& data_dir, const std::string* out_path, bool debug) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read spec file '" << spec_path << "'\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  gogc::DataSources sources;
  sources.base_dir = data_dir.empty() ? std::filesystem::path(spec_path).parent_path() : std::filesystem::path(data_dir);
  if (sources.base_dir.empty()) sources.base_dir = ".";

  gogc::CompileResult result = gogc::compile(text.str(), sources);
  if (debug) {
    for (const auto& t : result.trace) std::cerr << t.summary.dump() << "\n";
  }
  std::string svg;
  if (result.ok() && out_path) {
    try {
      svg = gogc::emit_svg(result.scene);
    } catch (const gogc::Error& e) {
      result.diagnostics.push_back({gogc::Severity::Error, gogc::Phase::Assemble, "",
                                    std::string(gogc::to_string(e.code())) + ": " + e.what()});
    }
  }
  for (const auto& d : result.diagnostics) std::cerr << gogc::to_json_line(d) << "\n";
  if (!result.ok()) return 1;
  if (out_path) {
    if (*out_path == "-") {
      std::cout << svg;
    } else {
      std::ofstream out(*out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write '" << *out_path << "'\n";
        return 2;
      }
      out << svg;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile declarative chart specs to SVG"};
  app.require_subcommand(1);

  std::string spec, out, data_dir;
  bool debug = false;

  auto* compile = app.add_subcommand("compile", "compile a spec to SVG");
  compile->add_option("--spec", spec, "spec file")->required();
  compile->add_option("--out", out, "output SVG file, - for stdout")->required();
  compile->add_option("--data-dir", data_dir, "base directory for data files (default: the spec's directory)");
  compile->add_flag("--debug", debug, "print a JSON summary per phase on stderr");

  auto* validate = app.add_subcommand("validate", "check a spec without writing output");
  validate->add_option("--spec", spec, "spec file")->required();
  validate->add_option("--data-dir", data_dir, "base directory for data files (default: the spec's directory)");
  validate->add_flag("--debug", debug, "print a JSON summary per phase on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (compile->parsed()) return run(spec, data_dir, &out, debug);
  return run(spec, data_dir, nullptr, debug);
}
