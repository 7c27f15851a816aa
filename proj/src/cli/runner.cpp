#include "stochscl/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/cli/registry.hpp"
#include "stochscl/core/grid.hpp"
#include "stochscl/oracle/exact.hpp"
#include "stochscl/solver/ensemble.hpp"
#include "stochscl/solver/trajectory_io.hpp"
#include "stochscl/util/errors.hpp"
#include "stochscl/verify/attainment.hpp"
#include "stochscl/verify/budget.hpp"
#include "stochscl/verify/contraction.hpp"
#include "stochscl/verify/entropy_check.hpp"
#include "stochscl/verify/strong_entropy.hpp"
#include "stochscl/verify/young.hpp"

namespace stochscl::cli {

namespace {

using verify::VerificationReport;

struct ModelSet {
  core::FluxModel flux;
  core::NoiseModel noise;
  std::function<double(double)> u0;
  std::function<double(double)> u0_b;  // second data set; optional
  bool has_u0_b = false;
};

ParamReader reader_for(const Config& cfg, const std::string& section, const std::string& kind) {
  return [&cfg, section, kind](const std::string& name, double fallback) {
    return cfg.get_double_or(section, kind + "." + name, fallback);
  };
}

ModelSet build_models(const Config& cfg) {
  ModelSet ms;
  ms.flux = build_flux(cfg.get_string_or("model", "flux", "burgers"),
                       reader_for(cfg, "model", "flux"));
  ms.noise = build_noise(cfg.get_string_or("model", "noise", "zero"),
                         reader_for(cfg, "model", "noise"));
  ms.u0 = build_u0(cfg.get_string_or("model", "u0", "bump"), reader_for(cfg, "model", "u0"));
  if (cfg.has("model", "u0_b")) {
    ms.u0_b = build_u0(cfg.get_string("model", "u0_b"), reader_for(cfg, "model", "u0_b"));
    ms.has_u0_b = true;
  }
  return ms;
}

solver::ViscousConfig build_viscous(const Config& cfg, const ModelSet& ms, double eps_visc) {
  solver::ViscousConfig vc;
  vc.eps_visc = eps_visc;
  vc.eps_reg = cfg.get_double_or("numerics", "eps_reg", 0.0);
  vc.grid = core::build_grid(cfg.get_double("numerics", "x_min"),
                             cfg.get_double("numerics", "x_max"),
                             static_cast<int>(cfg.get_int("numerics", "n_cells")));
  vc.t_end = cfg.get_double("numerics", "t_end");
  vc.dt = cfg.get_double("numerics", "dt");
  vc.flux = ms.flux;
  vc.noise = ms.noise;
  vc.u_lo = cfg.get_double_or("numerics", "u_lo", -1.0);
  vc.u_hi = cfg.get_double_or("numerics", "u_hi", 1.0);
  vc.blowup_guard = cfg.get_double_or("numerics", "blowup_guard", 1e6);
  return vc;
}

struct McParams {
  int n_paths = 0;
  std::uint64_t base_seed = 0;
  int stride = 1;
};

McParams mc_params(const Config& cfg, const RunOptions& opt) {
  McParams mc;
  mc.n_paths = static_cast<int>(cfg.get_int("monte_carlo", "n_paths"));
  mc.base_seed = static_cast<std::uint64_t>(cfg.get_int_or("monte_carlo", "base_seed", 0));
  if (opt.seed_override) mc.base_seed = *opt.seed_override;
  mc.stride = static_cast<int>(cfg.get_int_or("numerics", "stride", 10));
  return mc;
}

calculus::TestFunction psi_from_config(const Config& cfg, const solver::ViscousConfig& vc) {
  const double t0 = cfg.get_double_or("verification", "psi_t0", 0.0);
  const double t1 = cfg.get_double_or("verification", "psi_t1", vc.t_end);
  const double span = vc.grid.x_max - vc.grid.x_min;
  const double x0 = cfg.get_double_or("verification", "psi_x0", vc.grid.x_min + 0.25 * span);
  const double x1 = cfg.get_double_or("verification", "psi_x1", vc.grid.x_max - 0.25 * span);
  return calculus::bump_test_function(t0, t1, x0, x1);
}

/// Ensemble-wide solution range over a deterministic prefix of paths.
void observed_range(const solver::PathEnsemble& ens, int probe_paths, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const int m = std::min(probe_paths, ens.n_paths());
  for (int p = 0; p < m; ++p) {
    const auto traj = ens.solve_path(p);
    for (double v : traj.data) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

std::vector<VerificationReport> experiment_solve(const Config& cfg, const RunOptions& opt,
                                                 const std::string& dir) {
  const ModelSet ms = build_models(cfg);
  const auto vc = build_viscous(cfg, ms, cfg.get_double("numerics", "eps_visc"));
  const McParams mc = mc_params(cfg, opt);
  solver::PathEnsemble ens(vc, ms.u0, mc.n_paths, mc.base_seed, mc.stride);

  double sup_abs = 0.0;
  double final_mass = 0.0;
  for (int p = 0; p < mc.n_paths; ++p) {
    const auto traj = ens.solve_path(p);
    for (double v : traj.data) sup_abs = std::max(sup_abs, std::abs(v));
    if (p == 0) {
      const double* last = traj.row(traj.n_snaps - 1);
      for (int j = 0; j < vc.grid.n_cells; ++j) final_mass += last[j];
      final_mass *= vc.grid.dx;
      const bool dump = cfg.get_int_or("output", "dump_trajectories", 1) != 0;
      if (dump && !dir.empty()) {
        std::ofstream out(dir + "/trajectory_path0.csv");
        solver::export_trajectory_csv(traj, out);
      }
    }
  }

  VerificationReport rep;
  rep.property_name = "solve";
  rep.estimate = sup_abs;
  rep.threshold = vc.blowup_guard;
  rep.passed = true;  // a blow-up would have thrown
  rep.add_meta("final_mass_path0", final_mass);
  rep.add_meta("n_paths", mc.n_paths);
  return {rep};
}

std::vector<VerificationReport> experiment_entropy_check(const Config& cfg,
                                                         const RunOptions& opt) {
  const ModelSet ms = build_models(cfg);
  const auto vc = build_viscous(cfg, ms, cfg.get_double("numerics", "eps_visc"));
  const McParams mc = mc_params(cfg, opt);
  solver::PathEnsemble ens(vc, ms.u0, mc.n_paths, mc.base_seed, mc.stride);

  const double beta_eps = cfg.get_double_or("verification", "beta_eps", 0.1);
  const auto pair = calculus::build_entropy_pair(beta_eps);

  double lo, hi;
  observed_range(ens, 8, lo, hi);
  const int k_interior = static_cast<int>(cfg.get_int_or("verification", "k_grid_size", 9));
  const auto k_grid = verify::k_grid_over_range(lo - 0.5 * beta_eps, hi + 0.5 * beta_eps,
                                                k_interior);

  const auto base = psi_from_config(cfg, vc);
  const double tc = 0.5 * (base.support_t0 + base.support_t1);
  const double xc = 0.5 * (base.support_x0 + base.support_x1);
  const double ht = 0.5 * (base.support_t1 - base.support_t0);
  const double hx = 0.5 * (base.support_x1 - base.support_x0);
  std::vector<calculus::TestFunction> psi_set = {
      base,
      calculus::bump_test_function(tc - 0.6 * ht, tc + 0.6 * ht, xc - 0.6 * hx, xc + 0.6 * hx),
      calculus::bump_test_function(base.support_t0, tc + 0.2 * ht, xc - 0.2 * hx,
                                   base.support_x1),
  };

  double tolerance = cfg.get_double_or("verification", "tolerance", 0.0);
  if (tolerance <= 0.0) {
    tolerance = verify::entropy_error_budget(vc.grid.dx, vc.dt * mc.stride, mc.n_paths);
  }
  const auto result = verify::entropy_report(ens, pair, k_grid, psi_set, tolerance, opt.threads);

  VerificationReport rep;
  rep.property_name = "entropy_inequality";
  rep.estimate = result.fraction_nonnegative;
  rep.std_error = result.std_error;
  rep.threshold = 0.95;  // pass rule: estimate >= threshold
  rep.passed = result.passed;
  rep.add_meta("mean_min_functional", result.mean);
  rep.add_meta("tolerance", result.tolerance);
  rep.add_meta("beta_eps", beta_eps);
  rep.add_meta("k_grid_points", static_cast<int>(k_grid.size()));
  rep.add_meta("n_paths", mc.n_paths);
  return {rep};
}

std::vector<VerificationReport> experiment_contraction(const Config& cfg, const RunOptions& opt,
                                                       bool positive_part) {
  const ModelSet ms = build_models(cfg);
  if (!ms.has_u0_b) {
    throw ConfigError("model.u0_b: contraction/comparison experiments need a second data set");
  }
  const auto vc = build_viscous(cfg, ms, cfg.get_double("numerics", "eps_visc"));
  const McParams mc = mc_params(cfg, opt);
  solver::PathEnsemble u_ens(vc, ms.u0, mc.n_paths, mc.base_seed, mc.stride);
  solver::PathEnsemble v_ens(vc, ms.u0_b, mc.n_paths, mc.base_seed, mc.stride);
  const auto times = cfg.get_double_list("verification", "times");
  const double slack = cfg.get_double_or("verification", "slack", 0.05);
  if (positive_part) {
    return {verify::comparison(u_ens, v_ens, times, slack, opt.threads)};
  }
  return {verify::l1_contraction(u_ens, v_ens, times, slack, opt.threads)};
}

std::vector<VerificationReport> experiment_attainment(const Config& cfg,
                                                      const RunOptions& opt) {
  const ModelSet ms = build_models(cfg);
  const auto vc = build_viscous(cfg, ms, cfg.get_double("numerics", "eps_visc"));
  const McParams mc = mc_params(cfg, opt);
  solver::PathEnsemble ens(vc, ms.u0, mc.n_paths, mc.base_seed, mc.stride);
  const auto psi = psi_from_config(cfg, vc);
  const auto psi_x = [psi](double x) {
    return psi.psi(0.5 * (psi.support_t0 + psi.support_t1), x);
  };
  const auto h_ladder = cfg.get_double_list("verification", "h_ladder");
  return {verify::initial_attainment(ens, ms.u0, psi_x, h_ladder, opt.threads)};
}

std::vector<VerificationReport> experiment_strong_entropy(const Config& cfg,
                                                          const RunOptions& opt) {
  const ModelSet ms = build_models(cfg);
  if (!ms.has_u0_b) {
    throw ConfigError("model.u0_b: the strong-entropy probe needs a second data set");
  }
  const auto vc = build_viscous(cfg, ms, cfg.get_double("numerics", "eps_visc"));
  const McParams mc = mc_params(cfg, opt);
  solver::PathEnsemble v_ens(vc, ms.u0, mc.n_paths, mc.base_seed, mc.stride);
  solver::PathEnsemble ut_ens(vc, ms.u0_b, mc.n_paths, mc.base_seed, mc.stride);

  const double beta_eps = cfg.get_double_or("verification", "beta_eps", 0.1);
  const auto pair = calculus::build_entropy_pair(beta_eps);
  const auto psi = psi_from_config(cfg, vc);

  verify::StrongEntropyParams params;
  params.delta = cfg.get_double_or("verification", "delta", 0.1);
  params.delta0_ladder = cfg.get_double_list("verification", "delta0_ladder");
  params.v_grid_n = static_cast<int>(cfg.get_int_or("verification", "v_grid_n", 64));

  auto reports = verify::strong_entropy_residual(v_ens, ut_ens, pair, psi, params, opt.threads);

  if (cfg.get_int_or("verification", "jbeta_probe", 0) != 0) {
    std::vector<double> probes;
    for (double d0 : params.delta0_ladder) {
      probes.push_back(verify::jbeta_linf_probe(ut_ens, pair, psi, params.delta, d0,
                                                params.v_grid_n, opt.threads));
    }
    // Least-squares slope of log(probe) against log(delta0).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int n = static_cast<int>(probes.size());
    for (int i = 0; i < n; ++i) {
      const double lx = std::log(params.delta0_ladder[static_cast<std::size_t>(i)]);
      const double ly = std::log(std::max(probes[static_cast<std::size_t>(i)], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    VerificationReport rep;
    rep.property_name = "jbeta_linf_exponent";
    rep.estimate = slope;
    rep.threshold = -1.8;  // pass rule: estimate >= threshold
    rep.passed = slope >= -1.8;
    for (int i = 0; i < n; ++i) {
      std::ostringstream key;
      key << "probe_d0_" << verify::format_double(params.delta0_ladder[static_cast<std::size_t>(i)]);
      rep.add_meta(key.str(), probes[static_cast<std::size_t>(i)]);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<VerificationReport> experiment_young(const Config& cfg, const RunOptions& opt,
                                                 bool convergence_only) {
  const ModelSet ms = build_models(cfg);
  const auto ladder_eps = cfg.get_double_list("numerics", "eps_visc_ladder");
  const McParams mc = mc_params(cfg, opt);

  std::vector<std::unique_ptr<solver::PathEnsemble>> owners;
  std::vector<const solver::PathEnsemble*> ladder;
  for (double eps : ladder_eps) {
    owners.push_back(std::make_unique<solver::PathEnsemble>(build_viscous(cfg, ms, eps), ms.u0,
                                                            mc.n_paths, mc.base_seed, mc.stride));
    ladder.push_back(owners.back().get());
  }

  if (convergence_only) {
    return {verify::cauchy_convergence(ladder, opt.threads)};
  }

  const auto vc0 = ladder[0]->config();
  const auto psi = psi_from_config(cfg, vc0);
  const bool enforce_a4 = cfg.get_int_or("verification", "enforce_a4", 1) != 0;
  std::vector<VerificationReport> reports;
  reports.push_back(verify::young_diagnostic(ladder, ms.flux, psi, enforce_a4, opt.threads));
  reports.push_back(verify::moment_uniformity(ladder, {2, 4}, 2.0, opt.threads));
  return reports;
}

std::vector<VerificationReport> experiment_oracle_validate(const Config& cfg,
                                                           const RunOptions& opt) {
  const ModelSet ms = build_models(cfg);
  const double u_lo = cfg.get_double_or("numerics", "u_lo", -1.0);
  const double u_hi = cfg.get_double_or("numerics", "u_hi", 1.0);
  const double x_lo = cfg.get_double("numerics", "x_min");
  const double x_hi = cfg.get_double("numerics", "x_max");
  // Accept (and ignore) the solver keys so one config can drive both the
  // assumption check and the runs.
  (void)cfg.get_int_or("numerics", "n_cells", 0);
  (void)cfg.get_double_or("numerics", "t_end", 0.0);
  (void)cfg.get_double_or("numerics", "dt", 0.0);
  (void)cfg.get_double_or("numerics", "eps_visc", 0.0);
  (void)cfg.get_double_or("numerics", "eps_reg", 0.0);
  (void)cfg.get_double_or("numerics", "blowup_guard", 0.0);
  if (cfg.has("numerics", "eps_visc_ladder")) {
    (void)cfg.get_double_list("numerics", "eps_visc_ladder");
  }
  if (cfg.has("monte_carlo", "n_paths")) {
    (void)mc_params(cfg, opt);
  }

  std::vector<double> r_samples, x_samples, u_samples;
  for (int i = 0; i <= 100; ++i) r_samples.push_back(u_lo + (u_hi - u_lo) * i / 100);
  for (int i = 0; i <= 40; ++i) x_samples.push_back(x_lo + (x_hi - x_lo) * i / 40);
  for (int i = 0; i <= 20; ++i) u_samples.push_back(u_lo + (u_hi - u_lo) * i / 20);

  std::vector<VerificationReport> reports;
  {
    VerificationReport rep;
    rep.property_name = "flux_assumptions";
    try {
      const auto res = core::validate_flux(ms.flux, r_samples);
      rep.estimate = res.max_df_rel_error;
      rep.threshold = 1e-6;
      rep.passed = true;
      rep.add_meta("a4_fraction", res.a4_fraction);
      rep.add_meta("a4_flag", res.a4_fraction > 0.5 ? "true" : "false");
    } catch (const Error& e) {
      rep.passed = false;
      rep.add_meta("error", e.what());
    }
    reports.push_back(std::move(rep));
  }
  {
    VerificationReport rep;
    rep.property_name = "noise_assumptions";
    try {
      const auto res = core::validate_noise(ms.noise, x_samples, u_samples);
      rep.estimate = res.lipschitz_ratio;
      rep.threshold = ms.noise.lipschitz_c;
      rep.passed = true;
      rep.add_meta("envelope_ratio", res.envelope_ratio);
      rep.add_meta("declared_lipschitz_c", ms.noise.lipschitz_c);
    } catch (const Error& e) {
      rep.passed = false;
      rep.add_meta("error", e.what());
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::string timestamp_dirname(const std::string& experiment) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm_buf{};
  gmtime_r(&t, &tm_buf);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_buf);
  return experiment + "-" + buf;
}

}  // namespace

RunResult run_experiment(const Config& config, const RunOptions& options) {
  const std::string experiment = config.get_string("experiment", "name");

  std::string outdir;
  if (options.write_outputs) {
    std::filesystem::path base(options.outdir);
    std::filesystem::path dir = base / timestamp_dirname(experiment);
    // Avoid clobbering a same-second run.
    int suffix = 1;
    std::filesystem::path candidate = dir;
    while (std::filesystem::exists(candidate)) {
      candidate = dir;
      candidate += "-" + std::to_string(suffix++);
    }
    std::filesystem::create_directories(candidate);
    outdir = candidate.string();
  }

  RunResult result;
  result.experiment = experiment;
  result.output_directory = outdir;

  if (experiment == "solve") {
    result.reports = experiment_solve(config, options, outdir);
  } else if (experiment == "entropy-check") {
    result.reports = experiment_entropy_check(config, options);
  } else if (experiment == "contraction") {
    result.reports = experiment_contraction(config, options, false);
  } else if (experiment == "comparison") {
    result.reports = experiment_contraction(config, options, true);
  } else if (experiment == "initial-attainment") {
    result.reports = experiment_attainment(config, options);
  } else if (experiment == "strong-entropy") {
    result.reports = experiment_strong_entropy(config, options);
  } else if (experiment == "young") {
    result.reports = experiment_young(config, options, false);
  } else if (experiment == "convergence") {
    result.reports = experiment_young(config, options, true);
  } else if (experiment == "oracle-validate") {
    result.reports = experiment_oracle_validate(config, options);
  } else {
    throw ConfigError("experiment.name: unknown experiment '" + experiment + "'");
  }

  config.check_all_consumed();

  result.all_passed = true;
  for (const auto& r : result.reports) result.all_passed = result.all_passed && r.passed;

  if (options.write_outputs) {
    {
      std::ofstream out(outdir + "/report.json");
      out << verify::to_json(result.reports, experiment) << '\n';
    }
    {
      std::ofstream out(outdir + "/summary.csv");
      out << verify::to_csv(result.reports, experiment);
    }
    {
      std::ofstream out(outdir + "/config-echo.txt");
      out << config.raw_text();
    }
  }
  return result;
}

int run_cli(const std::string& config_path, const RunOptions& options) {
  try {
    const Config config = Config::parse_file(config_path);
    const RunResult result = run_experiment(config, options);
    for (const auto& r : result.reports) {
      std::cerr << (r.passed ? "[pass] " : "[FAIL] ") << r.property_name
                << " estimate=" << verify::format_double(r.estimate)
                << " threshold=" << verify::format_double(r.threshold) << "\n";
    }
    if (!result.output_directory.empty()) {
      std::cerr << "reports written to " << result.output_directory << "\n";
    }
    return result.all_passed ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalBlowup& e) {
    std::cerr << "numerical blow-up: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int validate_cli(const std::string& config_path) {
  try {
    const Config config = Config::parse_file(config_path);
    const std::string experiment = config.get_string("experiment", "name");
    // Build everything that can be built without running paths.
    const ModelSet ms = build_models(config);
    if (config.has("numerics", "eps_visc")) {
      const auto vc = build_viscous(config, ms, config.get_double("numerics", "eps_visc"));
      solver::ViscousScheme scheme(vc);
      scheme.validate();
    }
    if (config.has("numerics", "eps_visc_ladder")) {
      for (double eps : config.get_double_list("numerics", "eps_visc_ladder")) {
        const auto vc = build_viscous(config, ms, eps);
        solver::ViscousScheme scheme(vc);
        scheme.validate();
      }
    }
    std::cerr << "config ok: experiment '" << experiment << "'\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stochscl::cli
