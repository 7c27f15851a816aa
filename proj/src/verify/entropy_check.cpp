#include "stochscl/verify/entropy_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stochscl/calculus/entropy_flux.hpp"
#include "stochscl/util/errors.hpp"
#include "stochscl/util/parallel.hpp"

namespace stochscl::verify {

namespace {

void check_psi_support(const solver::Trajectory& traj, const calculus::TestFunction& psi) {
  const auto& g = traj.grid;
  if (psi.support_x0 <= g.x_min || psi.support_x1 >= g.x_max) {
    std::ostringstream os;
    os << "entropy_functional: psi space support [" << psi.support_x0 << ", " << psi.support_x1
       << "] leaks outside the box interior (" << g.x_min << ", " << g.x_max << ")";
    throw SupportViolation(os.str());
  }
  if (psi.support_t0 < 0.0 || psi.support_t1 > traj.t_end()) {
    std::ostringstream os;
    os << "entropy_functional: psi time support [" << psi.support_t0 << ", " << psi.support_t1
       << "] leaks outside [0, " << traj.t_end() << ")";
    throw SupportViolation(os.str());
  }
}

}  // namespace

double entropy_functional(const solver::Trajectory& traj, const core::FluxModel& flux,
                          const core::NoiseModel& noise, const calculus::EntropyPair& pair,
                          double k, const calculus::TestFunction& psi) {
  check_psi_support(traj, psi);
  const auto& g = traj.grid;
  const int n = g.n_cells;
  const double dx = g.dx;
  const double dts = traj.snapshot_dt();

  // Range of u feeding the F^beta(., k) tabulation.
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -u_min;
  for (double v : traj.data) {
    u_min = std::min(u_min, v);
    u_max = std::max(u_max, v);
  }
  const double pad = pair.eps + 1e-6;
  calculus::EntropyFluxTable zeta(pair, flux, k, std::min(u_min, k) - pad,
                                  std::max(u_max, k) + pad);

  // Initial term, against the trajectory's own initial data.
  double total = 0.0;
  {
    const double* u0 = traj.row(0);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += pair.beta(u0[j] - k) * psi.psi(0.0, g.center(j));
    }
    total += acc * dx;
  }

  // Space-time terms: trapezoid in t over snapshots, cell sums in x.
  for (int s = 0; s < traj.n_snaps; ++s) {
    const double t = traj.time(s);
    const double wt = (s == 0 || s == traj.n_snaps - 1) ? 0.5 * dts : dts;
    const double* u = traj.row(s);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = g.center(j);
      const double pt = psi.dpsi_dt(t, x);
      const double px = psi.dpsi_dx(t, x);
      const double pv = psi.psi(t, x);
      if (pt == 0.0 && px == 0.0 && pv == 0.0) continue;
      const double d = u[j] - k;
      double term = pair.beta(d) * pt + zeta(u[j]) * px;
      if (pv != 0.0) {
        const double sg = noise.sigma(x, u[j]);
        term += 0.5 * sg * sg * pair.d2beta(d) * pv;
      }
      acc += term;
    }
    total += acc * dx * wt;
  }

  // Ito term: left-endpoint sums against the snapshot-level increments.
  for (int s = 0; s + 1 < traj.n_snaps; ++s) {
    const double t = traj.time(s);
    const double* u = traj.row(s);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = g.center(j);
      const double pv = psi.psi(t, x);
      if (pv == 0.0) continue;
      acc += noise.sigma(x, u[j]) * pair.dbeta(u[j] - k) * pv;
    }
    total += acc * dx * traj.wiener_increment(s);
  }

  return total;
}

std::vector<double> k_grid_over_range(double lo, double hi, int n_interior) {
  std::vector<double> ks;
  ks.push_back(lo);
  for (int i = 1; i <= n_interior; ++i) {
    ks.push_back(lo + (hi - lo) * i / (n_interior + 1));
  }
  ks.push_back(hi);
  return ks;
}

EntropyFunctionalResult entropy_report(const solver::PathEnsemble& ensemble,
                                       const calculus::EntropyPair& pair,
                                       const std::vector<double>& k_grid,
                                       const std::vector<calculus::TestFunction>& psi_set,
                                       double tolerance, int n_threads) {
  const int m = ensemble.n_paths();
  EntropyFunctionalResult result;
  result.tolerance = tolerance;
  result.per_path_values.assign(static_cast<std::size_t>(m), 0.0);

  const auto& flux = ensemble.config().flux;
  const auto& noise = ensemble.config().noise;
  parallel_for(m, n_threads, [&](long p) {
    const solver::Trajectory traj = ensemble.solve_path(static_cast<int>(p));
    double worst = std::numeric_limits<double>::infinity();
    for (double k : k_grid) {
      for (const auto& psi : psi_set) {
        worst = std::min(worst, entropy_functional(traj, flux, noise, pair, k, psi));
      }
    }
    result.per_path_values[static_cast<std::size_t>(p)] = worst;
  });

  mean_and_stderr(result.per_path_values, result.mean, result.std_error);
  int hits = 0;
  for (double v : result.per_path_values) {
    if (v >= -tolerance) ++hits;
  }
  result.fraction_nonnegative = static_cast<double>(hits) / static_cast<double>(m);
  result.passed = result.fraction_nonnegative >= 0.95;
  return result;
}

}  // namespace stochscl::verify
