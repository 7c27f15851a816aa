#ifndef STOCHSCL_CALCULUS_MOLLIFIER_HPP
#define STOCHSCL_CALCULUS_MOLLIFIER_HPP

#include <functional>

namespace stochscl::calculus {

/// The pair (rho_{delta0}, varrho_delta) used in the doubled test function:
/// rho is one-sided with support [-delta0, 0], varrho symmetric with support
/// [-delta, delta]; both have unit mass.
struct MollifierPair {
  double delta0 = 1.0;  // time width
  double delta = 1.0;   // space width
  std::function<double(double)> rho;
  std::function<double(double)> varrho;
};

/// Unscaled profiles: rho(r) ~ (1-(2r+1)^2)^2 on [-1,0] and
/// varrho(x) ~ (1-x^2)^2 on [-1,1], both normalized to unit mass.
double rho_profile(double r);
double varrho_profile(double x);

MollifierPair build_mollifiers(double delta0, double delta);

/// Nonnegative C^{1,2} test function psi(t,x) with declared supports and
/// analytic derivatives.
struct TestFunction {
  std::function<double(double, double)> psi;
  std::function<double(double, double)> dpsi_dt;
  std::function<double(double, double)> dpsi_dx;
  std::function<double(double, double)> d2psi_dxx;
  double support_t0 = 0.0, support_t1 = 0.0;
  double support_x0 = 0.0, support_x1 = 0.0;
};

/// Separable bump psi(t,x) = amplitude * q((2t-t0-t1)/(t1-t0)) * q((2x-x0-x1)/(x1-x0))
/// with q(s) = (1-s^2)^3 on [-1,1]; C^2 and nonnegative.
TestFunction bump_test_function(double t0, double t1, double x0, double x1,
                                double amplitude = 1.0);

/// phi_{delta,delta0}(t,x;s,y) = rho_{delta0}(t-s) varrho_delta(x-y) psi(s,y).
struct DoubledTestFunction {
  MollifierPair mollifiers;
  TestFunction psi;

  double value(double t, double x, double s, double y) const {
    if (t > s || t < s - mollifiers.delta0) return 0.0;
    return mollifiers.rho(t - s) * mollifiers.varrho(x - y) * psi.psi(s, y);
  }
};

double doubled_test_value(const DoubledTestFunction& dt, double t, double x, double s, double y);

}  // namespace stochscl::calculus

#endif
