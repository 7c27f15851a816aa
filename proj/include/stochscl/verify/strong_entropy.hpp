#ifndef STOCHSCL_VERIFY_STRONG_ENTROPY_HPP
#define STOCHSCL_VERIFY_STRONG_ENTROPY_HPP

#include <vector>

#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/solver/ensemble.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::verify {

/// Residual of the strong entropy condition for one delta0:
///   LHS = E int int [ int h(r,s;v,y) dW(r) ]_{v=v(s,y)} dy ds,
///         h(r,s;v,y) = int sigma(x,u~(r,x)) beta'(u~(r,x)-v) phi_{d,d0} dx,
///   RHS = -E int int int int sigma(x,u~) sigma(y,v) beta''(u~-v) phi dr dx dy ds,
///   R   = LHS - RHS.
/// The anticipative substitution v = v(s,y) is realized by tabulating the Ito
/// integral on a v-grid spanning the observed range of v plus one beta width,
/// then linearly interpolating.
struct StrongEntropyParams {
  double delta = 0.1;
  std::vector<double> delta0_ladder;  // descending
  int v_grid_n = 64;
};

struct StrongEntropyRung {
  double delta0 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double std_error = 0.0;  // of the residual
};

/// Per-path LHS/RHS for a single delta0; exposed for the oracle tests.
void strong_entropy_path_terms(const solver::Trajectory& v_traj,
                               const solver::Trajectory& ut_traj,
                               const core::NoiseModel& noise,
                               const calculus::EntropyPair& pair,
                               const calculus::TestFunction& psi, double delta, double delta0,
                               int v_grid_n, double& lhs, double& rhs);

std::vector<StrongEntropyRung> strong_entropy_rungs(const solver::PathEnsemble& v_ens,
                                                    const solver::PathEnsemble& u_tilde_ens,
                                                    const calculus::EntropyPair& pair,
                                                    const calculus::TestFunction& psi,
                                                    const StrongEntropyParams& params,
                                                    int n_threads = 1);

/// One report per delta0. A rung passes when its residual does not exceed the
/// previous rung's (within 2 SE of both); the last rung additionally requires
/// residual <= 2*SE + strong_entropy_budget.
std::vector<VerificationReport> strong_entropy_residual(const solver::PathEnsemble& v_ens,
                                                        const solver::PathEnsemble& u_tilde_ens,
                                                        const calculus::EntropyPair& pair,
                                                        const calculus::TestFunction& psi,
                                                        const StrongEntropyParams& params,
                                                        int n_threads = 1);

/// Monte Carlo estimate of sup_s E || J[beta',phi_{d,d0}](s;.,.) ||_inf^2
/// over the (y,v) tabulation.
double jbeta_linf_probe(const solver::PathEnsemble& u_tilde_ens,
                        const calculus::EntropyPair& pair, const calculus::TestFunction& psi,
                        double delta, double delta0, int v_grid_n = 64, int n_threads = 1);

}  // namespace stochscl::verify

#endif
