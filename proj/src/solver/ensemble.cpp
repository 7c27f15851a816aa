#include "stochscl/solver/ensemble.hpp"

#include <cmath>

#include "stochscl/util/errors.hpp"

namespace stochscl::solver {

PathEnsemble::PathEnsemble(ViscousConfig cfg, std::function<double(double)> u0, int n_paths,
                           std::uint64_t base_seed, int stride)
    : u0_(std::move(u0)), n_paths_(n_paths), base_seed_(base_seed), stride_(stride) {
  if (n_paths < 1) throw ConfigError("PathEnsemble: n_paths must be >= 1");
  n_steps_ = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  if (n_steps_ < 1) throw ConfigError("PathEnsemble: t_end/dt must give at least one step");
  if (n_steps_ % stride != 0) {
    throw ConfigError("PathEnsemble: stride must divide the step count");
  }
  auto scheme = std::make_shared<ViscousScheme>(cfg);
  scheme->validate();
  scheme_ = std::move(scheme);
}

PathEnsemble::PathEnsemble(ViscousConfig cfg, std::function<double(double)> u0,
                           const core::EnsembleSpec& spec, int stride)
    : PathEnsemble(
          [&] {
            if (spec.dt != cfg.dt || spec.t_end != cfg.t_end ||
                spec.grid.n_cells != cfg.grid.n_cells) {
              throw EnsembleMismatch(
                  "PathEnsemble: EnsembleSpec clock/grid disagrees with the viscous config");
            }
            return std::move(cfg);
          }(),
          std::move(u0), spec.n_paths, spec.base_seed, stride) {}

core::WienerPath PathEnsemble::path(int path_id) const {
  return core::sample_wiener(base_seed_, static_cast<std::uint64_t>(path_id), n_steps_,
                             config().dt);
}

Trajectory PathEnsemble::solve_path(int path_id) const {
  return scheme_->solve(path(path_id), u0_, stride_);
}

bool PathEnsemble::shares_drivers_with(const PathEnsemble& other) const {
  return base_seed_ == other.base_seed_ && n_paths_ == other.n_paths_ &&
         config().dt == other.config().dt && n_steps_ == other.n_steps_;
}

}  // namespace stochscl::solver
