#include "stochscl/calculus/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace stochscl::calculus {

namespace {
// Normalizations: int_{-1}^{0} (1-(2r+1)^2)^2 dr = 8/15 and
// int_{-1}^{1} (1-x^2)^2 dx = 16/15.
constexpr double kRhoNorm = 15.0 / 8.0;
constexpr double kVarrhoNorm = 15.0 / 16.0;

double q_bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return w * w * w;
}

double q_bump_d1(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return -6.0 * s * w * w;
}

double q_bump_d2(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return 6.0 * w * (5.0 * s * s - 1.0);
}
}  // namespace

double rho_profile(double r) {
  if (r > 0.0 || r < -1.0) return 0.0;
  const double t = 2.0 * r + 1.0;
  const double w = 1.0 - t * t;
  return kRhoNorm * w * w;
}

double varrho_profile(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double w = 1.0 - x * x;
  return kVarrhoNorm * w * w;
}

MollifierPair build_mollifiers(double delta0, double delta) {
  if (!(delta0 > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("build_mollifiers: widths must be positive");
  }
  MollifierPair m;
  m.delta0 = delta0;
  m.delta = delta;
  m.rho = [delta0](double r) { return rho_profile(r / delta0) / delta0; };
  m.varrho = [delta](double x) { return varrho_profile(x / delta) / delta; };
  return m;
}

TestFunction bump_test_function(double t0, double t1, double x0, double x1, double amplitude) {
  if (!(t1 > t0) || !(x1 > x0)) {
    throw std::invalid_argument("bump_test_function: empty support window");
  }
  const double st_scale = 2.0 / (t1 - t0);
  const double sx_scale = 2.0 / (x1 - x0);
  const double tc = 0.5 * (t0 + t1);
  const double xc = 0.5 * (x0 + x1);
  TestFunction f;
  f.support_t0 = t0;
  f.support_t1 = t1;
  f.support_x0 = x0;
  f.support_x1 = x1;
  f.psi = [=](double t, double x) {
    return amplitude * q_bump((t - tc) * st_scale) * q_bump((x - xc) * sx_scale);
  };
  f.dpsi_dt = [=](double t, double x) {
    return amplitude * st_scale * q_bump_d1((t - tc) * st_scale) * q_bump((x - xc) * sx_scale);
  };
  f.dpsi_dx = [=](double t, double x) {
    return amplitude * sx_scale * q_bump((t - tc) * st_scale) * q_bump_d1((x - xc) * sx_scale);
  };
  f.d2psi_dxx = [=](double t, double x) {
    return amplitude * sx_scale * sx_scale * q_bump((t - tc) * st_scale) *
           q_bump_d2((x - xc) * sx_scale);
  };
  return f;
}

double doubled_test_value(const DoubledTestFunction& dt, double t, double x, double s, double y) {
  return dt.value(t, x, s, y);
}

}  // namespace stochscl::calculus
