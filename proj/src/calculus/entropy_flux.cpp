#include "stochscl/calculus/entropy_flux.hpp"

#include <cmath>
#include <vector>

#include "stochscl/util/quadrature.hpp"

namespace stochscl::calculus {

double entropy_flux(const EntropyPair& pair, const core::FluxModel& flux, double a, double b) {
  if (a == b) return 0.0;
  const auto integrand = [&](double s) { return pair.dbeta(s - b) * flux.df(s); };
  // beta' is only piecewise polynomial across s = b +- eps; split there.
  const std::vector<double> breaks = {b - pair.eps, b, b + pair.eps};
  return integrate_gl5_split(integrand, b, a, 0.25 * pair.eps, breaks);
}

double kruzkov_flux(const core::FluxModel& flux, double a, double b) {
  if (a == b) return 0.0;
  const double s = (a > b) ? 1.0 : -1.0;
  return s * (flux.f(a) - flux.f(b));
}

double entropy_flux_error_bound(const EntropyPair& pair, const core::FluxModel& flux, double u,
                                double v) {
  return std::abs(entropy_flux(pair, flux, v, u) - kruzkov_flux(flux, u, v));
}

EntropyFluxTable::EntropyFluxTable(const EntropyPair& pair, const core::FluxModel& flux, double k,
                                   double a_min, double a_max, int n_nodes)
    : k_(k) {
  std::vector<double> values(static_cast<std::size_t>(n_nodes));
  const double h = (a_max - a_min) / (n_nodes - 1);
  const auto integrand = [&](double s) { return pair.dbeta(s - k) * flux.df(s); };
  const std::vector<double> breaks = {k - pair.eps, k, k + pair.eps};
  // Accumulate node to node instead of re-integrating from k each time.
  values[0] = entropy_flux(pair, flux, a_min, k);
  for (int i = 1; i < n_nodes; ++i) {
    const double lo = a_min + (i - 1) * h;
    values[static_cast<std::size_t>(i)] =
        values[static_cast<std::size_t>(i - 1)] +
        integrate_gl5_split(integrand, lo, lo + h, 0.25 * pair.eps, breaks);
  }
  table_ = CubicTable(a_min, a_max, std::move(values));
}

}  // namespace stochscl::calculus
