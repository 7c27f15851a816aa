#include "stochscl/verify/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stochscl/util/errors.hpp"
#include "stochscl/util/parallel.hpp"

namespace stochscl::verify {

namespace {

void require_coupled(const solver::PathEnsemble& u_ens, const solver::PathEnsemble& v_ens) {
  if (!u_ens.shares_drivers_with(v_ens)) {
    throw EnsembleMismatch("contraction: ensembles do not share Wiener drivers");
  }
  const auto& ga = u_ens.config().grid;
  const auto& gb = v_ens.config().grid;
  if (ga.n_cells != gb.n_cells || ga.x_min != gb.x_min || ga.x_max != gb.x_max) {
    throw EnsembleMismatch("contraction: ensembles live on different grids");
  }
  if (u_ens.stride() != v_ens.stride()) {
    throw EnsembleMismatch("contraction: ensembles have different snapshot strides");
  }
}

int snapshot_index(const solver::Trajectory& traj, double t) {
  const int idx = static_cast<int>(std::llround(t / traj.snapshot_dt()));
  return std::clamp(idx, 0, traj.n_snaps - 1);
}

/// Distance rows per path: slot 0 is the initial distance, then one per time.
/// transform maps the pointwise difference (u - v) to its contribution.
template <typename Transform>
std::vector<std::vector<double>> pathwise_distances(const solver::PathEnsemble& u_ens,
                                                    const solver::PathEnsemble& v_ens,
                                                    const std::vector<double>& times,
                                                    int n_threads, Transform&& transform) {
  const int m = u_ens.n_paths();
  const std::size_t cols = times.size() + 1;
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m));
  parallel_for(m, n_threads, [&](long p) {
    const auto tu = u_ens.solve_path(static_cast<int>(p));
    const auto tv = v_ens.solve_path(static_cast<int>(p));
    const int n = tu.grid.n_cells;
    const double dx = tu.grid.dx;
    std::vector<double> row(cols, 0.0);
    {
      const double* a = tu.row(0);
      const double* b = tv.row(0);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += transform(a[j] - b[j]);
      row[0] = acc * dx;
    }
    for (std::size_t q = 0; q < times.size(); ++q) {
      const int s = snapshot_index(tu, times[q]);
      const double* a = tu.row(s);
      const double* b = tv.row(s);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += transform(a[j] - b[j]);
      row[q + 1] = acc * dx;
    }
    rows[static_cast<std::size_t>(p)] = std::move(row);
  });
  return rows;
}

struct TimeStats {
  std::vector<double> mean;  // per column
  std::vector<double> se;
};

TimeStats column_stats(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  TimeStats st;
  st.mean.resize(cols);
  st.se.resize(cols);
  std::vector<double> column(rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t p = 0; p < rows.size(); ++p) column[p] = rows[p][c];
    mean_and_stderr(column, st.mean[c], st.se[c]);
  }
  return st;
}

}  // namespace

VerificationReport l1_contraction(const solver::PathEnsemble& u_ens,
                                  const solver::PathEnsemble& v_ens,
                                  const std::vector<double>& times, double slack,
                                  int n_threads) {
  require_coupled(u_ens, v_ens);
  const auto rows = pathwise_distances(u_ens, v_ens, times, n_threads,
                                       [](double d) { return std::abs(d); });
  const auto st = column_stats(rows, times.size() + 1);

  const double initial = st.mean[0];
  const double threshold = initial * (1.0 + slack);
  VerificationReport report;
  report.property_name = "l1_contraction";
  report.threshold = threshold;
  report.passed = true;
  double worst = -1.0;
  for (std::size_t q = 0; q < times.size(); ++q) {
    const double est = st.mean[q + 1];
    const double se = st.se[q + 1];
    const bool ok = est <= threshold + 2.0 * se;
    report.passed = report.passed && ok;
    if (est > worst) {
      worst = est;
      report.estimate = est;
      report.std_error = se;
    }
    std::ostringstream key;
    key << "E_l1_t" << format_double(times[q]);
    report.add_meta(key.str(), est);
  }
  report.add_meta("E_l1_initial", initial);
  report.add_meta("slack", slack);
  report.add_meta("n_paths", u_ens.n_paths());
  return report;
}

VerificationReport comparison(const solver::PathEnsemble& u_ens,
                              const solver::PathEnsemble& v_ens,
                              const std::vector<double>& times, double slack, int n_threads) {
  require_coupled(u_ens, v_ens);
  const auto pos_rows = pathwise_distances(u_ens, v_ens, times, n_threads,
                                           [](double d) { return d > 0.0 ? d : 0.0; });
  const auto abs_rows = pathwise_distances(u_ens, v_ens, {}, n_threads,
                                           [](double d) { return std::abs(d); });
  const auto st = column_stats(pos_rows, times.size() + 1);
  double initial_abs, initial_abs_se;
  {
    std::vector<double> c0(abs_rows.size());
    for (std::size_t p = 0; p < abs_rows.size(); ++p) c0[p] = abs_rows[p][0];
    mean_and_stderr(c0, initial_abs, initial_abs_se);
  }

  const double initial_pos = st.mean[0];
  const double threshold = initial_pos * (1.0 + slack) + slack * initial_abs;
  VerificationReport report;
  report.property_name = "comparison";
  report.threshold = threshold;
  report.passed = true;
  double worst = -1.0;
  for (std::size_t q = 0; q < times.size(); ++q) {
    const double est = st.mean[q + 1];
    const double se = st.se[q + 1];
    const bool ok = est <= threshold + 2.0 * se;
    report.passed = report.passed && ok;
    if (est > worst) {
      worst = est;
      report.estimate = est;
      report.std_error = se;
    }
    std::ostringstream key;
    key << "E_pos_t" << format_double(times[q]);
    report.add_meta(key.str(), est);
  }
  report.add_meta("E_pos_initial", initial_pos);
  report.add_meta("E_l1_initial", initial_abs);
  report.add_meta("slack", slack);
  report.add_meta("n_paths", u_ens.n_paths());
  return report;
}

}  // namespace stochscl::verify
