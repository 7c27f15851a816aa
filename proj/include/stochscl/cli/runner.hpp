#ifndef STOCHSCL_CLI_RUNNER_HPP
#define STOCHSCL_CLI_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "stochscl/cli/config.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::cli {

struct RunOptions {
  int threads = 1;
  std::string outdir = ".";
  std::optional<std::uint64_t> seed_override;
  bool write_outputs = true;
};

struct RunResult {
  std::string experiment;
  std::vector<verify::VerificationReport> reports;
  bool all_passed = false;
  std::string output_directory;  // empty when write_outputs was off
};

/// Executes the configured experiment and (optionally) writes
/// report.json + summary.csv + config echo under
/// <outdir>/<experiment>-<timestamp>/. Throws ConfigError / NumericalBlowup;
/// the CLI maps those to exit codes 2 / 3.
RunResult run_experiment(const Config& config, const RunOptions& options);

/// Exit-code wrapper: 0 all passed, 1 verification failure, 2 config error,
/// 3 numerical blow-up. Messages go to stderr.
int run_cli(const std::string& config_path, const RunOptions& options);

/// Parses and validates without running. Exit 0 / 2 semantics.
int validate_cli(const std::string& config_path);

}  // namespace stochscl::cli

#endif
