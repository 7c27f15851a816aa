#include "stochscl/verify/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace stochscl::verify {

std::string format_double(double v) {
  nlohmann::ordered_json j = v;
  return j.dump();
}

void VerificationReport::add_meta(const std::string& key, double value) {
  metadata.emplace_back(key, format_double(value));
}

void VerificationReport::add_meta(const std::string& key, int value) {
  metadata.emplace_back(key, std::to_string(value));
}

void mean_and_stderr(const std::vector<double>& values, double& mean, double& se) {
  const std::size_t n = values.size();
  if (n == 0) {
    mean = 0.0;
    se = 0.0;
    return;
  }
  double acc = 0.0;
  for (double v : values) acc += v;
  mean = acc / static_cast<double>(n);
  if (n == 1) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
  }
  se = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

namespace {

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["property"] = r.property_name;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["threshold"] = r.threshold;
  j["passed"] = r.passed;
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  return report_to_json(report).dump(2);
}

std::string to_json(const std::vector<VerificationReport>& reports,
                    const std::string& experiment) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    all = all && r.passed;
  }
  j["passed"] = all;
  j["reports"] = arr;
  return j.dump(2);
}

std::string to_csv(const std::vector<VerificationReport>& reports,
                   const std::string& experiment) {
  std::ostringstream os;
  os << "experiment,property,estimate,std_error,threshold,passed\n";
  for (const auto& r : reports) {
    os << experiment << ',' << r.property_name << ',' << format_double(r.estimate) << ','
       << format_double(r.std_error) << ',' << format_double(r.threshold) << ','
       << (r.passed ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace stochscl::verify
