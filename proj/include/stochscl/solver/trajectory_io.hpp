#ifndef STOCHSCL_SOLVER_TRAJECTORY_IO_HPP
#define STOCHSCL_SOLVER_TRAJECTORY_IO_HPP

#include <iosfwd>

#include "stochscl/solver/viscous.hpp"

namespace stochscl::solver {

/// CSV dump: '#' header lines carrying (seed, path_id, eps_visc, dx, dt,
/// stride, n_cells), then one row per snapshot: t, u_0, ..., u_{N-1}.
void export_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace stochscl::solver

#endif
