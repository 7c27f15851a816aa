#ifndef STOCHSCL_SOLVER_ENSEMBLE_HPP
#define STOCHSCL_SOLVER_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <memory>

#include "stochscl/core/wiener.hpp"
#include "stochscl/solver/viscous.hpp"

namespace stochscl::solver {

/// A family of coupled sample paths: one viscous configuration plus a seeded
/// Brownian driver per path_id. Trajectories are produced on demand so large
/// ensembles never have to be resident in memory at once.
///
/// Two ensembles "share drivers" when (base_seed, n_paths, dt, steps) agree;
/// they may differ in initial data or viscosity, which is what the coupled
/// verification functionals need.
class PathEnsemble {
 public:
  PathEnsemble(ViscousConfig cfg, std::function<double(double)> u0, int n_paths,
               std::uint64_t base_seed, int stride);

  /// Same, with the Monte Carlo block spelled as an EnsembleSpec, whose clock
  /// and grid must agree with the viscous configuration.
  PathEnsemble(ViscousConfig cfg, std::function<double(double)> u0,
               const core::EnsembleSpec& spec, int stride);

  int n_paths() const { return n_paths_; }
  std::uint64_t base_seed() const { return base_seed_; }
  int stride() const { return stride_; }
  int n_steps() const { return n_steps_; }
  const ViscousConfig& config() const { return scheme_->config(); }
  const ViscousScheme& scheme() const { return *scheme_; }
  const std::function<double(double)>& u0() const { return u0_; }

  core::WienerPath path(int path_id) const;
  Trajectory solve_path(int path_id) const;

  /// True when the two ensembles ride the same Brownian drivers on the same
  /// grid and clock.
  bool shares_drivers_with(const PathEnsemble& other) const;

 private:
  std::shared_ptr<const ViscousScheme> scheme_;
  std::function<double(double)> u0_;
  int n_paths_ = 0;
  std::uint64_t base_seed_ = 0;
  int stride_ = 1;
  int n_steps_ = 0;
};

}  // namespace stochscl::solver

#endif
