#ifndef STOCHSCL_ORACLE_EXACT_HPP
#define STOCHSCL_ORACLE_EXACT_HPP

#include <functional>

#include "stochscl/core/grid.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/core/wiener.hpp"

namespace stochscl::oracle {

/// Riemann data for a convex flux; convexity is checked on [min(uL,uR), max(uL,uR)].
struct RiemannProblem {
  double u_left = 0.0;
  double u_right = 0.0;
  core::FluxModel flux;

  void validate() const;
};

/// Entropy solution of the Burgers Riemann problem: shock of speed
/// (uL+uR)/2 when uL > uR, rarefaction fan u = x/t when uL < uR.
double burgers_riemann(double u_left, double u_right, double t, double x);

/// Exact solution of du + c u_x dt = sigma0 dW on the periodic box:
/// u(t,x) = u0(x - c t) + sigma0 W(t), shift wrapped periodically.
/// t must lie on the path's time grid.
double linear_additive_exact(const std::function<double(double)>& u0, double c, double sigma0,
                             const core::WienerPath& path, const core::Grid1D& grid, double t,
                             double x);

/// Pre-shock smooth solution by the method of characteristics: solves
/// x = xi + F'(u0(xi)) t for xi by bisection and returns u0(xi).
/// Throws PostShock for t >= 0.95 * T_blowup (T_blowup estimated numerically
/// on [probe_lo, probe_hi]).
double smooth_characteristics(const std::function<double(double)>& u0,
                              const core::FluxModel& flux, double t, double x, double probe_lo,
                              double probe_hi);

/// Gradient blow-up time T* = -1 / min_xi d/dxi [F'(u0(xi))], +inf if the
/// characteristic speeds never compress.
double characteristic_blowup_time(const std::function<double(double)>& u0,
                                  const core::FluxModel& flux, double probe_lo, double probe_hi);

}  // namespace stochscl::oracle

#endif
