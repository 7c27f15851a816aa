#include "stochscl/core/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stochscl/util/errors.hpp"

namespace stochscl::core {

namespace {
constexpr double kSlack = 1.0 + 1e-9;
constexpr double kFdRelTol = 1e-6;

double central_diff(const std::function<double(double)>& f, double r, double h) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}
}  // namespace

NoiseValidation validate_noise(const NoiseModel& model, const std::vector<double>& x_samples,
                               const std::vector<double>& u_samples) {
  if (x_samples.empty() || u_samples.empty()) {
    throw std::invalid_argument("validate_noise: sample arrays must be nonempty");
  }
  NoiseValidation report;

  // A3 envelope on all samples.
  for (double x : x_samples) {
    const double gx = model.envelope_g(x);
    for (double u : u_samples) {
      const double bound = gx * (1.0 + std::abs(u));
      const double s = std::abs(model.sigma(x, u));
      const double ratio = (s == 0.0) ? 0.0 : s / bound;
      if (ratio > report.envelope_ratio) report.envelope_ratio = ratio;
      if (ratio > kSlack) {
        std::ostringstream os;
        os << "validate_noise: envelope A3 violated at (x=" << x << ", u=" << u
           << "): |sigma|=" << s << " > g(x)(1+|u|)=" << bound;
        throw AssumptionViolated(os.str());
      }
    }
  }

  // A2 Lipschitz quotients over all sample pairs.
  for (std::size_t i = 0; i < x_samples.size(); ++i) {
    for (std::size_t a = 0; a < u_samples.size(); ++a) {
      const double x = x_samples[i], u = u_samples[a];
      const double sxu = model.sigma(x, u);
      for (std::size_t j = i; j < x_samples.size(); ++j) {
        for (std::size_t b = (j == i ? a + 1 : 0); b < u_samples.size(); ++b) {
          const double y = x_samples[j], v = u_samples[b];
          const double denom = std::abs(u - v) + std::abs(x - y);
          if (denom == 0.0) continue;
          const double ratio = std::abs(model.sigma(y, v) - sxu) / denom;
          if (ratio > report.lipschitz_ratio) report.lipschitz_ratio = ratio;
          if (ratio > model.lipschitz_c * kSlack) {
            std::ostringstream os;
            os << "validate_noise: Lipschitz A2 violated between (x=" << x << ", u=" << u
               << ") and (y=" << y << ", v=" << v << "): quotient " << ratio
               << " > declared C=" << model.lipschitz_c;
            throw AssumptionViolated(os.str());
          }
        }
      }
    }
  }

  report.passed = true;
  return report;
}

FluxValidation validate_flux(const FluxModel& model, const std::vector<double>& r_samples) {
  if (r_samples.empty()) {
    throw std::invalid_argument("validate_flux: sample array must be nonempty");
  }
  FluxValidation report;
  int a4_hits = 0;
  for (double r : r_samples) {
    const double h = 1e-5 * std::max(1.0, std::abs(r));
    const double fd1 = central_diff(model.f, r, h);
    const double fd2 = central_diff(model.df, r, h);
    const double scale1 = std::max({std::abs(model.df(r)), std::abs(fd1), 1.0});
    const double scale2 = std::max({std::abs(model.d2f(r)), std::abs(fd2), 1.0});
    const double e1 = std::abs(fd1 - model.df(r)) / scale1;
    const double e2 = std::abs(fd2 - model.d2f(r)) / scale2;
    report.max_df_rel_error = std::max(report.max_df_rel_error, e1);
    report.max_d2f_rel_error = std::max(report.max_d2f_rel_error, e2);
    if (e1 > kFdRelTol || e2 > kFdRelTol) {
      std::ostringstream os;
      os << "validate_flux: declared derivative disagrees with finite differences at r=" << r
         << " (df rel err " << e1 << ", d2f rel err " << e2 << ")";
      throw DerivativeMismatch(os.str());
    }
    if (std::abs(model.d2f(r)) > 1e-12) ++a4_hits;
  }
  report.a4_fraction = static_cast<double>(a4_hits) / static_cast<double>(r_samples.size());
  report.passed = true;
  return report;
}

}  // namespace stochscl::core
