#include "stochscl/core/grid.hpp"

#include <sstream>

#include "stochscl/util/errors.hpp"

namespace stochscl::core {

Grid1D build_grid(double x_min, double x_max, int n_cells) {
  if (!(x_max > x_min)) {
    std::ostringstream os;
    os << "build_grid: x_max (" << x_max << ") must exceed x_min (" << x_min << ")";
    throw InvalidDomain(os.str());
  }
  if (n_cells < 8) {
    std::ostringstream os;
    os << "build_grid: n_cells (" << n_cells << ") must be >= 8";
    throw InvalidDomain(os.str());
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.dx = (x_max - x_min) / n_cells;
  return g;
}

}  // namespace stochscl::core
