#ifndef STOCHSCL_VERIFY_REPORT_HPP
#define STOCHSCL_VERIFY_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace stochscl::verify {

/// Monte Carlo statistics of a per-path entropy functional minimum.
struct EntropyFunctionalResult {
  std::vector<double> per_path_values;
  double mean = 0.0;
  double std_error = 0.0;
  double fraction_nonnegative = 0.0;  // at the stated tolerance
  double tolerance = 0.0;
  bool passed = false;
};

/// Outcome of one verified property. `passed` follows the one-sided rule
/// estimate <= threshold + 2 * std_error unless the property documents
/// a different combination (the builder decides and stores the result).
struct VerificationReport {
  std::string property_name;
  double estimate = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
  }
  void add_meta(const std::string& key, double value);
  void add_meta(const std::string& key, int value);
};

/// Mean and standard error of the mean, accumulated in index order so the
/// result is independent of how the values were produced.
void mean_and_stderr(const std::vector<double>& values, double& mean, double& se);

/// Stable JSON rendering (fixed key order, shortest round-trip doubles).
std::string to_json(const VerificationReport& report);
std::string to_json(const std::vector<VerificationReport>& reports,
                    const std::string& experiment);

/// CSV with the frozen header experiment,property,estimate,std_error,threshold,passed.
std::string to_csv(const std::vector<VerificationReport>& reports,
                   const std::string& experiment);

/// Shortest round-trip decimal rendering of a double (used everywhere a float
/// lands in a report, so serialized output is byte-stable).
std::string format_double(double v);

}  // namespace stochscl::verify

#endif
