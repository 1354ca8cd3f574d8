#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levysearch/cli.hpp"
#include "levysearch/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo detection times of intermittent random walks on the torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::string output;
  std::string workers;
  std::string seed;

  for (const char* name : {"simulate", "sweep", "sensitivity", "verify", "fig2"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", sets, "override one setting, key=value (repeatable)");
    sub->add_option("-o,--output", output, "output directory");
    sub->add_option("-w,--workers", workers, "worker threads");
    sub->add_option("--seed", seed, "64-bit master seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? levysearch::kExitOk : levysearch::kExitConfig;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<std::string> overrides = {"command=" + app.get_subcommands().front()->get_name()};
  overrides.insert(overrides.end(), sets.begin(), sets.end());
  if (!output.empty()) overrides.push_back("output=" + output);
  if (!workers.empty()) overrides.push_back("workers=" + workers);
  if (!seed.empty()) overrides.push_back("seed=" + seed);

  levysearch::ExperimentConfig config;
  try {
    config = levysearch::parse_config(text, overrides);
  } catch (const levysearch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return levysearch::kExitConfig;
  }
  return levysearch::run(config, std::cout, std::cerr);
}
