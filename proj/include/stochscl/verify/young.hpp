#ifndef STOCHSCL_VERIFY_YOUNG_HPP
#define STOCHSCL_VERIFY_YOUNG_HPP

#include <vector>

#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/solver/ensemble.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::verify {

/// Concentration defect at one viscosity: Pi_T is split into mesoscale
/// space-time cells with edge ~ sqrt(eps_visc) (between the viscous width
/// O(eps) and O(1), so persistent oscillation would be caught while honest
/// small-scale structure is averaged out); the empirical measure of u over
/// (paths x cell) gives
///   D(eps) = sum_cells psi(center) * (mean F(u) - F(mean u))^2 * cell volume.
double young_d_value(const solver::PathEnsemble& ensemble, const core::FluxModel& flux,
                     const calculus::TestFunction& psi, int n_threads = 1);

/// D over a coupled eps ladder (decreasing eps_visc, shared drivers); passes
/// when D decreases along the ladder. Throws A4Violation when enforce_a4 is
/// set and the flux has F'' = 0 across the sampled range (Jensen's equality
/// makes the diagnostic vacuous for affine flux).
VerificationReport young_diagnostic(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                    const core::FluxModel& flux,
                                    const calculus::TestFunction& psi, bool enforce_a4 = true,
                                    int n_threads = 1);

/// E||u_{eps_k} - u_{eps_{k+1}}||_{L1(Pi_T)} per ladder rung; passes when the
/// rung differences are nonincreasing (within 2 SE).
VerificationReport cauchy_convergence(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                      int n_threads = 1);

/// max_t E||u_eps(t)||_p^p per rung; passes when the ratio across rungs stays
/// below max_ratio for every p in p_list.
VerificationReport moment_uniformity(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                     const std::vector<int>& p_list, double max_ratio = 2.0,
                                     int n_threads = 1);

}  // namespace stochscl::verify

#endif
