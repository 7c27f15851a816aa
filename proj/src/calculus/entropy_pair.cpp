#include "stochscl/calculus/entropy_pair.hpp"

#include <cmath>
#include <stdexcept>

namespace stochscl::calculus {

namespace {
// Antiderivative bookkeeping for the quintic profile:
//   beta''(r) = (15/8)(1 - r^2)^2                      on [-1, 1]
//   beta'(r)  = (15/8)(r - 2r^3/3 + r^5/5),  beta'(1) = 1
//   beta(r)   = (15/8)(r^2/2 - r^4/6 + r^6/30), beta(1) = 11/16
// Outside [-1,1] the profile continues as |r| - 5/16.
constexpr double kScale = 15.0 / 8.0;
constexpr double kM1 = 5.0 / 16.0;
constexpr double kM2 = 15.0 / 8.0;
}  // namespace

double beta_profile(double r) {
  const double a = std::abs(r);
  if (a >= 1.0) return a - kM1;
  const double r2 = r * r;
  return kScale * r2 * (0.5 - r2 / 6.0 + r2 * r2 / 30.0);
}

double beta_profile_d1(double r) {
  if (r >= 1.0) return 1.0;
  if (r <= -1.0) return -1.0;
  const double r2 = r * r;
  return kScale * r * (1.0 - 2.0 * r2 / 3.0 + r2 * r2 / 5.0);
}

double beta_profile_d2(double r) {
  const double a = std::abs(r);
  if (a >= 1.0) return 0.0;
  const double w = 1.0 - r * r;
  return kScale * w * w;
}

EntropyPair build_entropy_pair(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("build_entropy_pair: eps must be positive");
  EntropyPair pair;
  pair.eps = eps;
  pair.beta = [eps](double r) { return eps * beta_profile(r / eps); };
  pair.dbeta = [eps](double r) { return beta_profile_d1(r / eps); };
  pair.d2beta = [eps](double r) { return beta_profile_d2(r / eps) / eps; };
  pair.m1 = kM1;
  pair.m2 = kM2;
  return pair;
}

}  // namespace stochscl::calculus
