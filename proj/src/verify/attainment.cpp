#include "stochscl/verify/attainment.hpp"

#include <cmath>
#include <sstream>

#include "stochscl/util/errors.hpp"
#include "stochscl/util/parallel.hpp"

namespace stochscl::verify {

namespace {

int snapshots_for(const solver::Trajectory& traj, double h) {
  const double dts = traj.snapshot_dt();
  const int k = static_cast<int>(std::llround(h / dts));
  if (k < 2) {
    std::ostringstream os;
    os << "initial_attainment: h=" << h << " spans fewer than 2 snapshot intervals (dt_snap="
       << dts << ")";
    throw ConfigError(os.str());
  }
  if (k >= traj.n_snaps) {
    throw ConfigError("initial_attainment: h exceeds the trajectory horizon");
  }
  return k;
}

}  // namespace

std::vector<double> attainment_values(const solver::Trajectory& traj,
                                      const std::function<double(double)>& u0,
                                      const std::function<double(double)>& psi_x,
                                      const std::vector<double>& h_ladder) {
  const auto& g = traj.grid;
  const int n = g.n_cells;
  const double dts = traj.snapshot_dt();

  // Weighted L1 distance to u0 per snapshot, shared across the h ladder.
  std::vector<double> dist(static_cast<std::size_t>(traj.n_snaps));
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> base(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    w[static_cast<std::size_t>(j)] = psi_x(g.center(j));
    base[static_cast<std::size_t>(j)] = u0(g.center(j));
  }
  for (int s = 0; s < traj.n_snaps; ++s) {
    const double* u = traj.row(s);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += std::abs(u[j] - base[static_cast<std::size_t>(j)]) * w[static_cast<std::size_t>(j)];
    }
    dist[static_cast<std::size_t>(s)] = acc * g.dx;
  }

  std::vector<double> out;
  out.reserve(h_ladder.size());
  for (double h : h_ladder) {
    const int k = snapshots_for(traj, h);
    double acc = 0.5 * (dist[0] + dist[static_cast<std::size_t>(k)]);
    for (int s = 1; s < k; ++s) acc += dist[static_cast<std::size_t>(s)];
    out.push_back(acc * dts / (k * dts));
  }
  return out;
}

VerificationReport initial_attainment(const solver::PathEnsemble& ensemble,
                                      const std::function<double(double)>& u0,
                                      const std::function<double(double)>& psi_x,
                                      const std::vector<double>& h_ladder, int n_threads) {
  const int m = ensemble.n_paths();
  const std::size_t nh = h_ladder.size();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
  parallel_for(m, n_threads, [&](long p) {
    const auto traj = ensemble.solve_path(static_cast<int>(p));
    rows[static_cast<std::size_t>(p)] = attainment_values(traj, u0, psi_x, h_ladder);
  });

  std::vector<double> a(nh), se(nh), column(static_cast<std::size_t>(m));
  for (std::size_t q = 0; q < nh; ++q) {
    for (int p = 0; p < m; ++p) column[static_cast<std::size_t>(p)] = rows[static_cast<std::size_t>(p)][q];
    mean_and_stderr(column, a[q], se[q]);
  }

  VerificationReport report;
  report.property_name = "initial_attainment";
  bool monotone = true;
  for (std::size_t q = 1; q < nh; ++q) {
    monotone = monotone && a[q] <= a[q - 1];
  }
  const double half_gate = a.front() / 2.0;
  report.estimate = a.back();
  report.std_error = se.back();
  report.threshold = half_gate;
  report.passed = monotone && a.back() <= half_gate;
  for (std::size_t q = 0; q < nh; ++q) {
    std::ostringstream key;
    key << "A_h" << format_double(h_ladder[q]);
    report.add_meta(key.str(), a[q]);
  }
  report.add_meta("monotone", monotone ? "true" : "false");
  report.add_meta("n_paths", m);
  return report;
}

}  // namespace stochscl::verify
