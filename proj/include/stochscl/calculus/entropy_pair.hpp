#ifndef STOCHSCL_CALCULUS_ENTROPY_PAIR_HPP
#define STOCHSCL_CALCULUS_ENTROPY_PAIR_HPP

#include <functional>

namespace stochscl::calculus {

/// Smooth convex approximation beta_eps of |r| built from the scaled profile
/// beta_eps(r) = eps * beta(r/eps), together with the envelope constants
///   |r| - m1*eps <= beta_eps(r) <= |r|,   |beta_eps''| <= m2/eps on [-eps, eps].
struct EntropyPair {
  double eps = 1.0;
  std::function<double(double)> beta;
  std::function<double(double)> dbeta;
  std::function<double(double)> d2beta;
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Unscaled quintic profile: beta''(r) = (15/8)(1-r^2)^2 on [-1,1], zero
/// outside; beta' its odd antiderivative (so beta'(r) = sign(r) for |r| >= 1)
/// and beta the even antiderivative with beta(0) = 0.
double beta_profile(double r);
double beta_profile_d1(double r);
double beta_profile_d2(double r);

/// The quintic-profile pair at width eps; m1 = 5/16, m2 = 15/8.
EntropyPair build_entropy_pair(double eps);

}  // namespace stochscl::calculus

#endif
