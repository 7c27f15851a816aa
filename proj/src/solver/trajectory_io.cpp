#include "stochscl/solver/trajectory_io.hpp"

#include <ostream>

#include "stochscl/verify/report.hpp"

namespace stochscl::solver {

void export_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  using verify::format_double;
  os << "# seed=" << traj.path.seed << " path_id=" << traj.path.path_id
     << " eps_visc=" << format_double(traj.eps_visc) << " eps_reg=" << format_double(traj.eps_reg)
     << " dx=" << format_double(traj.grid.dx) << " dt=" << format_double(traj.dt)
     << " stride=" << traj.stride << " n_cells=" << traj.grid.n_cells << "\n";
  os << "# row = t, u(t,x_0), ..., u(t,x_{N-1}); x_j = x_min + (j+1/2) dx, x_min="
     << format_double(traj.grid.x_min) << "\n";
  for (int s = 0; s < traj.n_snaps; ++s) {
    os << format_double(traj.time(s));
    const double* row = traj.row(s);
    for (int j = 0; j < traj.grid.n_cells; ++j) {
      os << ',' << format_double(row[j]);
    }
    os << '\n';
  }
}

}  // namespace stochscl::solver
