#ifndef STOCHSCL_UTIL_QUADRATURE_HPP
#define STOCHSCL_UTIL_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace stochscl {

/// 5-point Gauss-Legendre rule on [-1,1]; exact for polynomials up to degree 9.
struct GaussLegendre5 {
  static constexpr std::array<double, 5> nodes = {
      -0.9061798459386639928, -0.5384693101056830910, 0.0,
      0.5384693101056830910, 0.9061798459386639928};
  static constexpr std::array<double, 5> weights = {
      0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
      0.4786286704993664680, 0.2369268850561890875};
};

/// Composite 5-point Gauss-Legendre over [a,b] with panel width <= max_panel.
template <typename F>
double integrate_gl5(F&& f, double a, double b, double max_panel) {
  if (a == b) return 0.0;
  const double len = b - a;
  const int n_panels = std::max(1, static_cast<int>(std::ceil(std::abs(len) / max_panel)));
  const double h = len / n_panels;
  double sum = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (std::size_t q = 0; q < 5; ++q) {
      panel += GaussLegendre5::weights[q] * f(mid + half * GaussLegendre5::nodes[q]);
    }
    sum += panel * half;
  }
  return sum;
}

/// Same rule but splitting first at the given breakpoints (where the integrand
/// is only piecewise smooth), then subdividing each piece to max_panel.
template <typename F>
double integrate_gl5_split(F&& f, double a, double b, double max_panel,
                           const std::vector<double>& breakpoints) {
  if (a == b) return 0.0;
  const double sign = (b >= a) ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> cuts;
  cuts.push_back(lo);
  for (double c : breakpoints) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate_gl5(f, cuts[i], cuts[i + 1], max_panel);
  }
  return sign * sum;
}

}  // namespace stochscl

#endif
