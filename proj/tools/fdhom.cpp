// fdhom run FILE [--json PATH] [--seed N] [--cap-paths N] [--cap-degree N] [--parallel] [--verbose]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fdhom/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Homological computations over bound quiver algebras"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run the tasks of an .fdh document");
  std::string file, json_path;
  fdhom::fdh::RunOptions opt;
  run->add_option("FILE", file, "input document")->required();
  run->add_option("--json", json_path, "write the JSON report to PATH");
  run->add_option("--seed", opt.seed, "seed for randomized searches and sampling");
  run->add_option("--cap-paths", opt.cap_paths, "path-length cap when building algebras")->check(CLI::PositiveNumber);
  run->add_option("--cap-degree", opt.cap_degree, "default degree cap for tasks without upto")->check(CLI::NonNegativeNumber);
  run->add_flag("--parallel", opt.parallel, "run tasks concurrently");
  run->add_flag("--verbose", opt.verbose, "include timings and witnesses");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << file << ": cannot open\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();

  fdhom::fdh::RunReport report;
  try {
    auto doc = fdhom::fdh::parse(text.str());
    report = fdhom::fdh::run(doc, opt);
  } catch (const fdhom::fdh::ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return 2;
  } catch (const fdhom::fdh::ResolutionError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return 2;
  }

  std::cout << report.table(opt.verbose);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << json_path << ": cannot write\n";
      return 1;
    }
    out << report.to_json(opt.verbose).dump(2) << "\n";
  }
  return report.exit_code();
}
