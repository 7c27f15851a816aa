#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stochscl/cli/registry.hpp"
#include "stochscl/cli/runner.hpp"
#include "stochscl/util/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stochscl: solver and Monte Carlo verification toolkit for 1-D scalar "
               "conservation laws with multiplicative Brownian forcing"};
  app.require_subcommand(1);

  std::string config_path;
  stochscl::cli::RunOptions options;
  options.threads = stochscl::hardware_threads();
  std::int64_t seed_override = -1;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "path to the experiment config")->required();
  run->add_option("--threads", options.threads, "worker threads (default: hardware)");
  run->add_option("--outdir", options.outdir, "output directory (default: .)");
  run->add_option("--seed-override", seed_override, "replace monte_carlo.base_seed");

  auto* validate = app.add_subcommand("validate", "parse and validate a config without running");
  validate->add_option("config", config_path, "path to the experiment config")->required();

  auto* list = app.add_subcommand("list-models", "print registered flux/noise/u0 builders");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << stochscl::cli::list_models();
    return 0;
  }
  if (validate->parsed()) {
    return stochscl::cli::validate_cli(config_path);
  }
  if (seed_override >= 0) {
    options.seed_override = static_cast<std::uint64_t>(seed_override);
  }
  return stochscl::cli::run_cli(config_path, options);
}
