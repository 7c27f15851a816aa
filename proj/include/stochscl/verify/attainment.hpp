#ifndef STOCHSCL_VERIFY_ATTAINMENT_HPP
#define STOCHSCL_VERIFY_ATTAINMENT_HPP

#include <functional>
#include <vector>

#include "stochscl/solver/ensemble.hpp"
#include "stochscl/verify/report.hpp"

namespace stochscl::verify {

/// A(h) = E[(1/h) int_0^h int |u(t,x)-u0(x)| psi(x) dx dt] over the given
/// h ladder (descending). Each h must span at least two snapshot intervals.
/// Passes when A is nonincreasing along the ladder and A(h_min) <= A(h_max)/2.
VerificationReport initial_attainment(const solver::PathEnsemble& ensemble,
                                      const std::function<double(double)>& u0,
                                      const std::function<double(double)>& psi_x,
                                      const std::vector<double>& h_ladder, int n_threads = 1);

/// A(h) values alone (index-aligned with h_ladder); used by tests.
std::vector<double> attainment_values(const solver::Trajectory& traj,
                                      const std::function<double(double)>& u0,
                                      const std::function<double(double)>& psi_x,
                                      const std::vector<double>& h_ladder);

}  // namespace stochscl::verify

#endif
