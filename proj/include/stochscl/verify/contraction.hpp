#ifndef STOCHSCL_VERIFY_CONTRACTION_HPP
#define STOCHSCL_VERIFY_CONTRACTION_HPP

#include <vector>

#include "stochscl/solver/ensemble.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::verify {

/// E||u(t)-v(t)||_1 at the requested times for two ensembles riding the same
/// Brownian drivers. Passes when every time satisfies
///   estimate(t) <= E||u0-v0||_1 * (1+slack) + 2*SE(t).
VerificationReport l1_contraction(const solver::PathEnsemble& u_ens,
                                  const solver::PathEnsemble& v_ens,
                                  const std::vector<double>& times, double slack = 0.05,
                                  int n_threads = 1);

/// Same with the positive part (r)_+ = max(0,r): passes when every time has
///   E||(u-v)_+||(t) <= E||(u0-v0)_+|| * (1+slack) + slack * E||u0-v0||_1 + 2*SE(t).
/// The second term covers discretization leakage when the data are ordered
/// and the positive part starts at zero.
VerificationReport comparison(const solver::PathEnsemble& u_ens,
                              const solver::PathEnsemble& v_ens,
                              const std::vector<double>& times, double slack = 0.05,
                              int n_threads = 1);

}  // namespace stochscl::verify

#endif
