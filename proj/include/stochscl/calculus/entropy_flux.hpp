#ifndef STOCHSCL_CALCULUS_ENTROPY_FLUX_HPP
#define STOCHSCL_CALCULUS_ENTROPY_FLUX_HPP

#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/util/interp.hpp"

namespace stochscl::calculus {

/// F^beta(a,b) = int_b^a beta'(s-b) F'(s) ds by composite Gauss-Legendre,
/// panels split at s = b +- eps and width <= eps/4 (exact for polynomial F').
double entropy_flux(const EntropyPair& pair, const core::FluxModel& flux, double a, double b);

/// Kruzkov flux sign(a-b)(F(a)-F(b)) with sign(0) = 0.
double kruzkov_flux(const core::FluxModel& flux, double a, double b);

/// |F^beta(v,u) - kruzkov(u,v)|; O(eps) by the envelope bound.
double entropy_flux_error_bound(const EntropyPair& pair, const core::FluxModel& flux, double u,
                                double v);

/// Tabulation of a -> F^beta(a, k) for fast repeated evaluation inside the
/// space-time functionals; cubic interpolation between nodes.
class EntropyFluxTable {
 public:
  EntropyFluxTable(const EntropyPair& pair, const core::FluxModel& flux, double k, double a_min,
                   double a_max, int n_nodes = 512);

  double operator()(double a) const {
    if (a == k_) return 0.0;  // empty integral, exact
    return table_(a);
  }

 private:
  double k_ = 0.0;
  CubicTable table_;
};

}  // namespace stochscl::calculus

#endif
