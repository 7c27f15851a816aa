#include "stochscl/verify/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stochscl/util/errors.hpp"
#include "stochscl/util/parallel.hpp"

namespace stochscl::verify {

namespace {

struct CellPartition {
  int nx_per = 1, nt_per = 1;  // fine samples per cell edge
  int n_cx = 0, n_ct = 0;      // full cells only
};

CellPartition mesoscale_partition(const solver::PathEnsemble& ens) {
  const auto& cfg = ens.config();
  const double h_target = std::sqrt(cfg.eps_visc);
  CellPartition part;
  part.nx_per = std::max(1, static_cast<int>(std::lround(h_target / cfg.grid.dx)));
  const double dts = cfg.dt * ens.stride();
  part.nt_per = std::max(1, static_cast<int>(std::lround(h_target / dts)));
  part.n_cx = cfg.grid.n_cells / part.nx_per;
  const int n_snaps = ens.n_steps() / ens.stride() + 1;
  part.n_ct = n_snaps / part.nt_per;
  return part;
}

void ensure_coupled_ladder(const std::vector<const solver::PathEnsemble*>& ladder,
                           bool strictly_decreasing = true) {
  if (ladder.empty()) throw ConfigError("eps ladder must not be empty");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (!ladder[0]->shares_drivers_with(*ladder[i])) {
      throw EnsembleMismatch("eps ladder ensembles do not share Wiener drivers");
    }
    const double prev = ladder[i - 1]->config().eps_visc;
    const double cur = ladder[i]->config().eps_visc;
    if (strictly_decreasing ? cur >= prev : cur > prev) {
      throw ConfigError("eps ladder must be decreasing in eps_visc");
    }
  }
}

}  // namespace

double young_d_value(const solver::PathEnsemble& ensemble, const core::FluxModel& flux,
                     const calculus::TestFunction& psi, int n_threads) {
  const CellPartition part = mesoscale_partition(ensemble);
  const auto& cfg = ensemble.config();
  const int m = ensemble.n_paths();
  const std::size_t n_cells = static_cast<std::size_t>(part.n_cx) * part.n_ct;

  // Per-path partial sums of u and F(u) per cell; pooled afterwards in path
  // order so the result does not depend on the worker count.
  std::vector<std::vector<double>> sum_u(static_cast<std::size_t>(m));
  std::vector<std::vector<double>> sum_f(static_cast<std::size_t>(m));
  parallel_for(m, n_threads, [&](long p) {
    const auto traj = ensemble.solve_path(static_cast<int>(p));
    std::vector<double> su(n_cells, 0.0), sf(n_cells, 0.0);
    for (int ct = 0; ct < part.n_ct; ++ct) {
      for (int k = 0; k < part.nt_per; ++k) {
        const double* row = traj.row(ct * part.nt_per + k);
        for (int cx = 0; cx < part.n_cx; ++cx) {
          const std::size_t cell = static_cast<std::size_t>(ct) * part.n_cx + cx;
          double au = 0.0, af = 0.0;
          const int j0 = cx * part.nx_per;
          for (int j = j0; j < j0 + part.nx_per; ++j) {
            au += row[j];
            af += flux.f(row[j]);
          }
          su[cell] += au;
          sf[cell] += af;
        }
      }
    }
    sum_u[static_cast<std::size_t>(p)] = std::move(su);
    sum_f[static_cast<std::size_t>(p)] = std::move(sf);
  });

  const double samples_per_cell =
      static_cast<double>(m) * part.nt_per * part.nx_per;
  const double cell_dx = part.nx_per * cfg.grid.dx;
  const double cell_dt = part.nt_per * cfg.dt * ensemble.stride();

  double d_value = 0.0;
  for (int ct = 0; ct < part.n_ct; ++ct) {
    const double t_center = (ct + 0.5) * cell_dt;
    for (int cx = 0; cx < part.n_cx; ++cx) {
      const std::size_t cell = static_cast<std::size_t>(ct) * part.n_cx + cx;
      const double x_center = cfg.grid.x_min + (cx + 0.5) * cell_dx;
      const double w = psi.psi(t_center, x_center);
      if (w == 0.0) continue;
      double su = 0.0, sf = 0.0;
      for (int p = 0; p < m; ++p) {
        su += sum_u[static_cast<std::size_t>(p)][cell];
        sf += sum_f[static_cast<std::size_t>(p)][cell];
      }
      const double mean_u = su / samples_per_cell;
      const double mean_f = sf / samples_per_cell;
      const double gap = mean_f - flux.f(mean_u);
      d_value += w * gap * gap * cell_dx * cell_dt;
    }
  }
  return d_value;
}

VerificationReport young_diagnostic(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                    const core::FluxModel& flux,
                                    const calculus::TestFunction& psi, bool enforce_a4,
                                    int n_threads) {
  ensure_coupled_ladder(eps_ladder);
  if (enforce_a4) {
    const auto& cfg = eps_ladder[0]->config();
    const int n = 512;
    int hits = 0;
    for (int i = 0; i <= n; ++i) {
      const double r = cfg.u_lo + (cfg.u_hi - cfg.u_lo) * i / n;
      if (std::abs(flux.d2f(r)) > 1e-12) ++hits;
    }
    if (static_cast<double>(hits) / (n + 1) < 0.5) {
      throw A4Violation(
          "young_diagnostic: flux has vanishing F'' across the sampled range; the "
          "concentration diagnostic is vacuous for affine flux");
    }
  }

  VerificationReport report;
  report.property_name = "young_concentration";
  std::vector<double> d_values;
  d_values.reserve(eps_ladder.size());
  for (const auto* ens : eps_ladder) {
    d_values.push_back(young_d_value(*ens, flux, psi, n_threads));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < d_values.size(); ++i) {
    decreasing = decreasing && d_values[i] < d_values[i - 1];
  }
  report.estimate = d_values.back();
  report.threshold = d_values.front();
  report.std_error = 0.0;
  report.passed = decreasing;
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    std::ostringstream key;
    key << "D_eps" << format_double(eps_ladder[i]->config().eps_visc);
    report.add_meta(key.str(), d_values[i]);
  }
  report.add_meta("n_paths", eps_ladder[0]->n_paths());
  return report;
}

VerificationReport cauchy_convergence(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                      int n_threads) {
  ensure_coupled_ladder(eps_ladder, /*strictly_decreasing=*/false);
  if (eps_ladder.size() < 2) throw ConfigError("cauchy_convergence: need at least two rungs");
  const auto& g0 = eps_ladder[0]->config().grid;
  for (const auto* e : eps_ladder) {
    if (e->config().grid.n_cells != g0.n_cells) {
      throw EnsembleMismatch("cauchy_convergence: rungs live on different grids");
    }
  }

  const int m = eps_ladder[0]->n_paths();
  const std::size_t n_pairs = eps_ladder.size() - 1;
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
  parallel_for(m, n_threads, [&](long p) {
    std::vector<solver::Trajectory> trajs;
    trajs.reserve(eps_ladder.size());
    for (const auto* e : eps_ladder) trajs.push_back(e->solve_path(static_cast<int>(p)));
    std::vector<double> row(n_pairs, 0.0);
    for (std::size_t q = 0; q < n_pairs; ++q) {
      const auto& a = trajs[q];
      const auto& b = trajs[q + 1];
      const double dts = a.snapshot_dt();
      double acc = 0.0;
      for (int s = 0; s < a.n_snaps; ++s) {
        const double wt = (s == 0 || s == a.n_snaps - 1) ? 0.5 * dts : dts;
        const double* ra = a.row(s);
        const double* rb = b.row(s);
        double slice = 0.0;
        for (int j = 0; j < a.grid.n_cells; ++j) slice += std::abs(ra[j] - rb[j]);
        acc += slice * wt;
      }
      row[q] = acc * a.grid.dx;
    }
    rows[static_cast<std::size_t>(p)] = std::move(row);
  });

  std::vector<double> means(n_pairs), ses(n_pairs), column(static_cast<std::size_t>(m));
  for (std::size_t q = 0; q < n_pairs; ++q) {
    for (int p = 0; p < m; ++p) column[static_cast<std::size_t>(p)] = rows[static_cast<std::size_t>(p)][q];
    mean_and_stderr(column, means[q], ses[q]);
  }

  VerificationReport report;
  report.property_name = "cauchy_convergence";
  bool ok = true;
  for (std::size_t q = 1; q < n_pairs; ++q) {
    ok = ok && means[q] <= means[q - 1] + 2.0 * (ses[q] + ses[q - 1]);
  }
  report.estimate = means.back();
  report.std_error = ses.back();
  report.threshold = means.front();
  report.passed = ok;
  for (std::size_t q = 0; q < n_pairs; ++q) {
    std::ostringstream key;
    key << "rung_" << q;
    report.add_meta(key.str(), means[q]);
  }
  report.add_meta("n_paths", m);
  return report;
}

VerificationReport moment_uniformity(const std::vector<const solver::PathEnsemble*>& eps_ladder,
                                     const std::vector<int>& p_list, double max_ratio,
                                     int n_threads) {
  ensure_coupled_ladder(eps_ladder);
  VerificationReport report;
  report.property_name = "moment_uniformity";
  double worst_ratio = 1.0;
  for (int mp : p_list) {
    std::vector<double> sup_per_rung;
    for (const auto* ens : eps_ladder) {
      const int m = ens->n_paths();
      const int n_snaps = ens->n_steps() / ens->stride() + 1;
      std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
      parallel_for(m, n_threads, [&](long p) {
        rows[static_cast<std::size_t>(p)] =
            solver::moments(ens->solve_path(static_cast<int>(p)), mp);
      });
      double sup_t = 0.0;
      for (int s = 0; s < n_snaps; ++s) {
        double acc = 0.0;
        for (int p = 0; p < m; ++p) acc += rows[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
        sup_t = std::max(sup_t, acc / m);
      }
      sup_per_rung.push_back(sup_t);
      std::ostringstream key;
      key << "sup_E_moment_p" << mp << "_eps" << format_double(ens->config().eps_visc);
      report.add_meta(key.str(), sup_t);
    }
    const double lo = *std::min_element(sup_per_rung.begin(), sup_per_rung.end());
    const double hi = *std::max_element(sup_per_rung.begin(), sup_per_rung.end());
    worst_ratio = std::max(worst_ratio, hi / lo);
  }
  report.estimate = worst_ratio;
  report.threshold = max_ratio;
  report.std_error = 0.0;
  report.passed = worst_ratio < max_ratio;
  report.add_meta("n_paths", eps_ladder[0]->n_paths());
  return report;
}

}  // namespace stochscl::verify
