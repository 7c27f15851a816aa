#ifndef STOCHSCL_SOLVER_VISCOUS_HPP
#define STOCHSCL_SOLVER_VISCOUS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "stochscl/core/grid.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/core/wiener.hpp"
#include "stochscl/solver/mollify.hpp"

namespace stochscl::solver {

/// Configuration of the viscous approximation
///   du + div F_eps(u) dt = sigma_eps(x,u) dW + eps_visc * u_xx dt
/// discretized with local Lax-Friedrichs flux, explicit centered diffusion and
/// Euler-Maruyama (noise at the left endpoint).
struct ViscousConfig {
  double eps_visc = 0.0;
  double eps_reg = 0.0;  // 0 means: tied to eps_visc
  core::Grid1D grid;
  double t_end = 0.0;
  double dt = 0.0;
  core::FluxModel flux;
  core::NoiseModel noise;
  // Expected solution range; used for coefficient tabulation and the CFL and
  // viscosity-dominance checks.
  double u_lo = -1.0;
  double u_hi = 1.0;
  double blowup_guard = 1e6;

  double effective_eps_reg() const { return eps_reg > 0.0 ? eps_reg : eps_visc; }
};

/// Space-time field u(t_n, x_j) for one sample path and one viscosity.
struct Trajectory {
  double eps_visc = 0.0;
  double eps_reg = 0.0;
  core::Grid1D grid;
  double dt = 0.0;
  int stride = 1;
  core::WienerPath path;
  int n_snaps = 0;  // snapshot count, including t = 0
  std::vector<double> data;  // n_snaps * n_cells, row-major in time

  double snapshot_dt() const { return dt * stride; }
  double time(int n) const { return n * snapshot_dt(); }
  double t_end() const { return time(n_snaps - 1); }
  const double* row(int n) const { return data.data() + static_cast<std::size_t>(n) * grid.n_cells; }
  double at(int n, int j) const { return row(n)[j]; }
  /// W at the n-th snapshot time.
  double wiener_at(int n) const { return path.cumulative[static_cast<std::size_t>(n) * stride]; }
  /// W(t_{n+1}) - W(t_n) across one snapshot interval.
  double wiener_increment(int n) const { return wiener_at(n + 1) - wiener_at(n); }
};

/// Prepared scheme: mollified coefficient tables bound to a config.
/// Immutable after construction; safe to share across worker threads.
class ViscousScheme {
 public:
  explicit ViscousScheme(const ViscousConfig& cfg);

  const ViscousConfig& config() const { return cfg_; }
  double max_wave_speed() const { return max_speed_; }
  double numerical_viscosity() const { return 0.5 * cfg_.grid.dx * max_speed_; }

  /// Throws ConfigError (mentioning "stability") if the time step or the
  /// viscosity-dominance requirement is violated.
  void validate() const;

  double flux_at(double u) const { return flux_.value(u); }
  double sigma_at(int cell, double u) const { return sigma_.value_at_node(cell, u); }

  /// One explicit update; dW is the Brownian increment over dt.
  std::vector<double> step(const std::vector<double>& u, double dW) const;

  /// Full trajectory from the regularized initial condition. Deterministic in
  /// (config, path, u0). Throws NumericalBlowup with the offending step index.
  Trajectory solve(const core::WienerPath& path, const std::function<double(double)>& u0,
                   int stride) const;

 private:
  void step_inplace(const std::vector<double>& u, double dW, std::vector<double>& out) const;

  ViscousConfig cfg_;
  MollifiedFlux flux_;
  MollifiedSigma sigma_;
  double max_speed_ = 0.0;
};

/// Convenience single-step entry point matching the operation contract.
std::vector<double> step(const std::vector<double>& u, double dW, const ViscousConfig& cfg);

/// Convenience solve entry point; builds the scheme, validates, runs.
Trajectory solve(const ViscousConfig& cfg, const core::WienerPath& path,
                 const std::function<double(double)>& u0, int stride);

/// ||u(t_n,.)||_p^p = sum |u_j|^p dx per snapshot.
std::vector<double> moments(const Trajectory& traj, int p);

/// eps_visc * sum_n sum_j phi''(u_j^n) ((u_{j+1}^n - u_j^n)/dx)^2 dx dt_snap.
double gradient_energy(const Trajectory& traj, const std::function<double(double)>& phi_d2);

}  // namespace stochscl::solver

#endif
