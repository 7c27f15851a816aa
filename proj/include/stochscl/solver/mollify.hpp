#ifndef STOCHSCL_SOLVER_MOLLIFY_HPP
#define STOCHSCL_SOLVER_MOLLIFY_HPP

#include <memory>
#include <vector>

#include "stochscl/core/grid.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/util/interp.hpp"

namespace stochscl::solver {

/// Smooth cutoff: 1 for |r| <= 1, 0 for |r| >= 2, quintic smoothstep between.
double cutoff(double r);

/// One-dimensional mollifier J_eps (polynomial bump, support [-eps, eps]).
double mollifier_j(double z, double eps);

/// Cutoff-and-mollified flux, tabulated over its whole support with cubic
/// interpolation; zero outside. Agrees with F to O(eps_reg) on compact sets
/// and vanishes for |r| >= sqrt(2/eps_reg) + eps_reg.
class MollifiedFlux {
 public:
  MollifiedFlux(const core::FluxModel& flux, double eps_reg);

  double value(double r) const {
    if (r <= support_lo_ || r >= support_hi_) return 0.0;
    return table_(r);
  }
  double derivative(double r) const {
    if (r <= support_lo_ || r >= support_hi_) return 0.0;
    return table_.derivative(r);
  }
  double support_radius() const { return support_hi_; }
  double eps_reg() const { return eps_; }

  /// Max |F_eps'| over [lo, hi], sampled at table resolution.
  double max_speed(double lo, double hi) const;

  /// Wraps the table as a FluxModel (d2f by finite differences of the table).
  core::FluxModel as_model(int growth_degree) const;

 private:
  double eps_ = 0.0;
  double support_lo_ = 0.0, support_hi_ = 0.0;
  CubicTable table_;
};

core::FluxModel mollify_flux(const core::FluxModel& flux, double eps_reg);

/// Rectangle over which sigma is tabulated. x spans the solver box; u spans
/// the expected solution range plus margin (linear extrapolation outside).
struct SigmaDomain {
  double x_lo = 0.0, x_hi = 1.0;
  double u_lo = -1.0, u_hi = 1.0;
  int nx = 256;
  int nu = 256;
};

/// 2-D mollification of sigma with cutoff, tabulated on an (x,u) grid with
/// bilinear interpolation; A2/A3 survive with constants inflated by O(eps_reg).
class MollifiedSigma {
 public:
  MollifiedSigma(const core::NoiseModel& noise, double eps_reg, const SigmaDomain& domain);

  double value(double x, double u) const;

  /// Row-aligned fast path: x snapped to the ix-th x-node.
  double value_at_node(int ix, double u) const;

  const SigmaDomain& domain() const { return dom_; }

  core::NoiseModel as_model(const core::NoiseModel& original, double eps_reg) const;

 private:
  SigmaDomain dom_;
  double hx_ = 1.0, hu_ = 1.0;
  std::vector<double> tab_;  // nx * nu row-major (x major)
};

core::NoiseModel mollify_sigma(const core::NoiseModel& noise, double eps_reg,
                               const SigmaDomain& domain);

/// Cell values of (u0 * cutoff) convolved with J_{eps_reg}.
/// Throws SupportViolation if u0's support touches the box boundary layer.
std::vector<double> regularize_initial(const std::function<double(double)>& u0, double eps_reg,
                                       const core::Grid1D& grid);

}  // namespace stochscl::solver

#endif
