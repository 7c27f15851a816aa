#ifndef STOCHSCL_VERIFY_ENTROPY_CHECK_HPP
#define STOCHSCL_VERIFY_ENTROPY_CHECK_HPP

#include <vector>

#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/solver/ensemble.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::verify {

/// The five-term entropy functional of one trajectory against the convex pair
/// (beta(.-k), F^beta(.,k)) and test function psi:
///   initial term + d_t psi term + F^beta grad psi term
///   + 1/2 sigma^2 beta'' psi term + Ito term (left endpoints, the
///   trajectory's own Brownian increments).
/// For an entropy solution this is >= 0 almost surely.
double entropy_functional(const solver::Trajectory& traj, const core::FluxModel& flux,
                          const core::NoiseModel& noise, const calculus::EntropyPair& pair,
                          double k, const calculus::TestFunction& psi);

/// Evenly spaced k levels covering [lo, hi]: both endpoints plus n_interior
/// interior points.
std::vector<double> k_grid_over_range(double lo, double hi, int n_interior);

/// Per-path minimum of the functional over (k_grid x psi_set); the property
/// passes when at least 95% of paths stay above -tolerance.
EntropyFunctionalResult entropy_report(const solver::PathEnsemble& ensemble,
                                       const calculus::EntropyPair& pair,
                                       const std::vector<double>& k_grid,
                                       const std::vector<calculus::TestFunction>& psi_set,
                                       double tolerance, int n_threads = 1);

}  // namespace stochscl::verify

#endif
