#ifndef STOCHSCL_CORE_GRID_HPP
#define STOCHSCL_CORE_GRID_HPP

#include <cmath>

namespace stochscl::core {

enum class Boundary { Periodic };

/// Uniform 1-D cell-centered grid on a periodic box [x_min, x_max).
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 0;
  double dx = 0.0;
  Boundary boundary = Boundary::Periodic;

  double center(int j) const { return x_min + (j + 0.5) * dx; }
  double width() const { return x_max - x_min; }

  /// Periodic neighbor index; |shift| may exceed n_cells.
  int neighbor(int j, int shift) const {
    int m = (j + shift) % n_cells;
    return m < 0 ? m + n_cells : m;
  }

  /// Signed displacement a-b wrapped into [-width/2, width/2).
  double wrap(double d) const {
    const double L = width();
    d = std::fmod(d, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
  }
};

/// Throws InvalidDomain unless x_max > x_min and n_cells >= 8.
Grid1D build_grid(double x_min, double x_max, int n_cells);

}  // namespace stochscl::core

#endif
