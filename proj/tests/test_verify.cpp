#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/core/grid.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/solver/ensemble.hpp"
#include "stochscl/util/errors.hpp"
#include "stochscl/verify/attainment.hpp"
#include "stochscl/verify/budget.hpp"
#include "stochscl/verify/contraction.hpp"
#include "stochscl/verify/entropy_check.hpp"
#include "stochscl/verify/strong_entropy.hpp"
#include "stochscl/verify/young.hpp"

using namespace stochscl;

namespace {

core::FluxModel burgers_flux() {
  core::FluxModel f;
  f.f = [](double u) { return 0.5 * u * u; };
  f.df = [](double u) { return u; };
  f.d2f = [](double) { return 1.0; };
  f.growth_degree = 2;
  return f;
}

core::FluxModel linear_flux(double c) {
  core::FluxModel f;
  f.f = [c](double u) { return c * u; };
  f.df = [c](double) { return c; };
  f.d2f = [](double) { return 0.0; };
  f.growth_degree = 1;
  return f;
}

core::NoiseModel zero_noise() {
  core::NoiseModel n;
  n.sigma = [](double, double) { return 0.0; };
  n.lipschitz_c = 0.0;
  n.envelope_g = [](double) { return 0.0; };
  return n;
}

core::NoiseModel xonly_noise(double amp) {
  core::NoiseModel n;
  n.sigma = [amp](double x, double) { return amp * std::exp(-x * x); };
  n.lipschitz_c = amp;
  n.envelope_g = [amp](double x) { return amp * std::exp(-x * x); };
  return n;
}

core::NoiseModel gauss_sin_noise(double amp, double wob) {
  core::NoiseModel n;
  n.sigma = [amp, wob](double x, double u) {
    return amp * std::exp(-x * x) * (1.0 + wob * std::sin(u));
  };
  n.lipschitz_c = amp * std::max(wob, 0.8578 * (1.0 + wob));
  n.envelope_g = [amp, wob](double x) { return amp * (1.0 + wob) * std::exp(-x * x); };
  return n;
}

double bump(double x, double c, double w, double a) {
  const double s = 2.0 * (x - c) / w;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return a * q * q * q;
}

solver::ViscousConfig small_config(core::FluxModel flux, core::NoiseModel noise) {
  solver::ViscousConfig vc;
  vc.eps_visc = 8e-3;
  vc.grid = core::build_grid(-1.2, 1.2, 160);
  vc.t_end = 0.4;
  vc.dt = 2.5e-3;
  vc.flux = std::move(flux);
  vc.noise = std::move(noise);
  vc.u_lo = -1.0;
  vc.u_hi = 1.0;
  return vc;
}

solver::Trajectory frozen_trajectory(const std::function<double(double)>& u0,
                                     double dt = 0.01) {
  solver::Trajectory traj;
  traj.eps_visc = 1e-3;
  traj.eps_reg = 1e-3;
  traj.grid = core::build_grid(-1.0, 1.0, 64);
  traj.dt = dt;
  traj.stride = 1;
  traj.n_snaps = 11;
  traj.path = core::sample_wiener(1, 0, 10, dt);
  traj.data.resize(static_cast<std::size_t>(traj.n_snaps) * 64);
  for (int s = 0; s < traj.n_snaps; ++s) {
    for (int j = 0; j < 64; ++j) {
      traj.data[static_cast<std::size_t>(s) * 64 + j] = u0(traj.grid.center(j));
    }
  }
  return traj;
}

}  // namespace

TEST_CASE("entropy functional vanishes for u identically k") {
  auto vc = small_config(burgers_flux(), zero_noise());
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi = calculus::bump_test_function(0.05, 0.35, -0.8, 0.8);
  // frozen field at constant 0 (compact support constraint), k = 0
  const auto traj = frozen_trajectory([](double) { return 0.0; }, 0.05);
  const double val = verify::entropy_functional(traj, vc.flux, vc.noise, pair, 0.0, psi);
  CHECK(val == 0.0);
}

TEST_CASE("entropy functional is exactly homogeneous under psi doubling") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.6); }, 1, 5, 2);
  const auto traj = ens.solve_path(0);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi1 = calculus::bump_test_function(0.05, 0.35, -0.8, 0.8, 1.0);
  const auto psi2 = calculus::bump_test_function(0.05, 0.35, -0.8, 0.8, 2.0);
  const double a = verify::entropy_functional(traj, vc.flux, vc.noise, pair, 0.3, psi1);
  const double b = verify::entropy_functional(traj, vc.flux, vc.noise, pair, 0.3, psi2);
  CHECK(b == 2.0 * a);  // scaling by a power of two is exact
}

TEST_CASE("entropy functional is additive over disjoint-support psi") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.6); }, 1, 6, 2);
  const auto traj = ens.solve_path(0);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi1 = calculus::bump_test_function(0.05, 0.35, -0.9, -0.1);
  const auto psi2 = calculus::bump_test_function(0.05, 0.35, 0.1, 0.9);
  calculus::TestFunction sum;
  sum.support_t0 = 0.05;
  sum.support_t1 = 0.35;
  sum.support_x0 = -0.9;
  sum.support_x1 = 0.9;
  sum.psi = [psi1, psi2](double t, double x) { return psi1.psi(t, x) + psi2.psi(t, x); };
  sum.dpsi_dt = [psi1, psi2](double t, double x) {
    return psi1.dpsi_dt(t, x) + psi2.dpsi_dt(t, x);
  };
  sum.dpsi_dx = [psi1, psi2](double t, double x) {
    return psi1.dpsi_dx(t, x) + psi2.dpsi_dx(t, x);
  };
  sum.d2psi_dxx = [psi1, psi2](double t, double x) {
    return psi1.d2psi_dxx(t, x) + psi2.d2psi_dxx(t, x);
  };
  const double k = 0.2;
  const double v1 = verify::entropy_functional(traj, vc.flux, vc.noise, pair, k, psi1);
  const double v2 = verify::entropy_functional(traj, vc.flux, vc.noise, pair, k, psi2);
  const double vs = verify::entropy_functional(traj, vc.flux, vc.noise, pair, k, sum);
  CHECK(vs == doctest::Approx(v1 + v2).epsilon(1e-12));
}

TEST_CASE("entropy functional: deterministic viscous Burgers shock produces entropy") {
  auto vc = small_config(burgers_flux(), zero_noise());
  vc.t_end = 0.5;
  solver::PathEnsemble ens(
      vc, [](double x) { return (x >= -0.6 && x <= -0.1) ? 0.8 : 0.0; }, 1, 7, 2);
  const auto traj = ens.solve_path(0);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi = calculus::bump_test_function(0.05, 0.45, -0.9, 0.9);
  const double budget = verify::entropy_error_budget(vc.grid.dx, vc.dt * 2, 1);
  for (double k : {0.2, 0.4, 0.6}) {  // k between uL and uR
    const double val = verify::entropy_functional(traj, vc.flux, vc.noise, pair, k, psi);
    CHECK(val >= -budget);
  }
}

TEST_CASE("entropy functional rejects leaking psi") {
  auto vc = small_config(burgers_flux(), zero_noise());
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.5); }, 1, 8, 2);
  const auto traj = ens.solve_path(0);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto leaky = calculus::bump_test_function(0.05, 0.35, -2.0, 0.5);
  CHECK_THROWS_AS(verify::entropy_functional(traj, vc.flux, vc.noise, pair, 0.0, leaky),
                  SupportViolation);
}

TEST_CASE("entropy report: one path duplicates the functional minimum") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.6); }, 1, 9, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  const std::vector<double> ks = {-0.1, 0.2, 0.5};
  const std::vector<calculus::TestFunction> psis = {
      calculus::bump_test_function(0.05, 0.35, -0.8, 0.8)};
  const auto rep = verify::entropy_report(ens, pair, ks, psis, 0.1, 1);
  const auto traj = ens.solve_path(0);
  double expect = 1e300;
  for (double k : ks) {
    expect = std::min(expect,
                      verify::entropy_functional(traj, vc.flux, vc.noise, pair, k, psis[0]));
  }
  REQUIRE(rep.per_path_values.size() == 1);
  CHECK(rep.per_path_values[0] == expect);
  CHECK(rep.mean == expect);
}

TEST_CASE("entropy report: smooth zero-noise transport stays above -budget") {
  auto vc = small_config(linear_flux(0.7), zero_noise());
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, -0.2, 0.6, 0.5); }, 1, 10, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  // k outside the solution range: beta(.-k) is exactly linear there
  const std::vector<double> ks = {-0.9, 1.4};
  const std::vector<calculus::TestFunction> psis = {
      calculus::bump_test_function(0.05, 0.35, -0.9, 0.9)};
  const double budget = verify::entropy_error_budget(vc.grid.dx, vc.dt * 2, 1);
  const auto rep = verify::entropy_report(ens, pair, ks, psis, budget, 1);
  CHECK(rep.per_path_values[0] >= -budget);
  CHECK(rep.passed);
}

TEST_CASE("entropy report determinism across worker counts") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.6); }, 6, 11, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  const std::vector<double> ks = {0.0, 0.3};
  const std::vector<calculus::TestFunction> psis = {
      calculus::bump_test_function(0.05, 0.35, -0.8, 0.8)};
  const auto a = verify::entropy_report(ens, pair, ks, psis, 0.1, 1);
  const auto b = verify::entropy_report(ens, pair, ks, psis, 0.1, 3);
  CHECK(a.per_path_values == b.per_path_values);
  CHECK(a.mean == b.mean);
}

TEST_CASE("l1 contraction: identical data gives zero distance") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  const auto u0 = [](double x) { return bump(x, 0.0, 0.8, 0.6); };
  solver::PathEnsemble a(vc, u0, 4, 21, 2);
  solver::PathEnsemble b(vc, u0, 4, 21, 2);
  const auto rep = verify::l1_contraction(a, b, {0.1, 0.3}, 0.05, 1);
  CHECK(rep.estimate == 0.0);
  CHECK(rep.passed);
}

TEST_CASE("l1 contraction: swap symmetry and driver mismatch") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  const auto u0a = [](double x) { return bump(x, -0.3, 0.6, 0.6); };
  const auto u0b = [](double x) { return bump(x, 0.3, 0.6, 0.45); };
  solver::PathEnsemble a(vc, u0a, 4, 33, 2);
  solver::PathEnsemble b(vc, u0b, 4, 33, 2);
  const auto r1 = verify::l1_contraction(a, b, {0.2}, 0.05, 1);
  const auto r2 = verify::l1_contraction(b, a, {0.2}, 0.05, 1);
  CHECK(r1.estimate == r2.estimate);
  CHECK(r1.std_error == r2.std_error);

  solver::PathEnsemble c(vc, u0b, 4, 34, 2);  // different seed
  CHECK_THROWS_AS(verify::l1_contraction(a, c, {0.2}, 0.05, 1), EnsembleMismatch);
}

TEST_CASE("l1 contraction: x-independent noise keeps shifted-data distance flat") {
  auto vc = small_config(burgers_flux(), zero_noise());
  core::NoiseModel cn;
  cn.sigma = [](double, double) { return 0.3; };
  cn.lipschitz_c = 0.0;
  cn.envelope_g = [](double) { return 0.3; };
  vc.noise = cn;
  const auto u0a = [](double x) { return bump(x, -0.25, 0.5, 0.5); };
  const auto u0b = [](double x) { return bump(x, 0.05, 0.5, 0.5); };  // shifted copy
  solver::PathEnsemble a(vc, u0a, 8, 55, 2);
  solver::PathEnsemble b(vc, u0b, 8, 55, 2);
  const auto rep = verify::l1_contraction(a, b, {0.1, 0.2, 0.3}, 0.05, 1);
  CHECK(rep.passed);
}

TEST_CASE("comparison: zero for identical data; splits the l1 norm with the swap") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  const auto u0a = [](double x) { return bump(x, -0.3, 0.6, 0.6); };
  const auto u0b = [](double x) { return bump(x, 0.3, 0.6, 0.45); };
  solver::PathEnsemble a(vc, u0a, 4, 41, 2);
  solver::PathEnsemble b(vc, u0b, 4, 41, 2);

  const auto same = verify::comparison(a, a, {0.2}, 0.05, 1);
  CHECK(same.estimate == 0.0);

  const auto pos_ab = verify::comparison(a, b, {0.2}, 0.05, 1);
  const auto pos_ba = verify::comparison(b, a, {0.2}, 0.05, 1);
  const auto full = verify::l1_contraction(a, b, {0.2}, 0.05, 1);
  CHECK(pos_ab.estimate + pos_ba.estimate == doctest::Approx(full.estimate).epsilon(1e-12));
}

TEST_CASE("comparison: ordered data stays ordered in expectation") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  const auto u0 = [](double x) { return bump(x, 0.0, 0.9, 0.7); };
  const auto v0 = [u0](double x) { return u0(x) - 0.3 * bump(x, 0.0, 0.5, 1.0); };
  solver::PathEnsemble uu(vc, u0, 16, 71, 2);
  solver::PathEnsemble vv(vc, v0, 16, 71, 2);
  // (v-u)_+ starts at zero and should stay near zero
  const auto rep = verify::comparison(vv, uu, {0.1, 0.2, 0.3}, 0.05, 1);
  CHECK(rep.passed);
}

TEST_CASE("initial attainment: frozen field and zero weight are exact zeros") {
  const auto u0 = [](double x) { return bump(x, 0.0, 0.8, 0.7); };
  const auto traj = frozen_trajectory(u0);
  const auto psi = [](double x) { return bump(x, 0.0, 1.2, 1.0); };
  const auto vals = verify::attainment_values(traj, u0, psi, {0.08, 0.04, 0.02});
  for (double v : vals) CHECK(v == 0.0);

  const auto zero_psi = [](double) { return 0.0; };
  const auto traj2 = frozen_trajectory([](double x) { return bump(x, 0.1, 0.5, 0.4); });
  const auto vals2 = verify::attainment_values(traj2, u0, zero_psi, {0.08, 0.04});
  for (double v : vals2) CHECK(v == 0.0);
}

TEST_CASE("initial attainment: heat flow decays along the h ladder") {
  auto vc = small_config(linear_flux(0.0), zero_noise());
  vc.eps_visc = 0.02;
  vc.dt = 1e-3;
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.8); }, 1, 13, 2);
  const auto psi = [](double x) { return bump(x, 0.0, 1.4, 1.0); };
  const auto rep = verify::initial_attainment(
      ens, [](double x) { return bump(x, 0.0, 0.8, 0.8); }, psi, {0.08, 0.04, 0.02, 0.01}, 1);
  CHECK(rep.passed);
}

TEST_CASE("initial attainment rejects h below two snapshot intervals") {
  auto vc = small_config(linear_flux(0.0), zero_noise());
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.8, 0.5); }, 1, 13, 2);
  const auto psi = [](double x) { return bump(x, 0.0, 1.2, 1.0); };
  CHECK_THROWS_AS(verify::initial_attainment(ens, [](double) { return 0.0; }, psi,
                                             {0.08, 0.005}, 1),
                  ConfigError);
}

TEST_CASE("strong entropy: zero noise collapses everything to zero") {
  auto vc = small_config(burgers_flux(), zero_noise());
  solver::PathEnsemble v_ens(vc, [](double x) { return bump(x, -0.2, 0.6, 0.5); }, 2, 91, 2);
  solver::PathEnsemble u_ens(vc, [](double x) { return bump(x, 0.2, 0.6, 0.4); }, 2, 91, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi = calculus::bump_test_function(0.1, 0.35, -0.6, 0.6);
  verify::StrongEntropyParams params;
  params.delta = 0.1;
  params.delta0_ladder = {0.08, 0.04};
  const auto rungs = verify::strong_entropy_rungs(v_ens, u_ens, pair, psi, params, 1);
  for (const auto& r : rungs) {
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.residual == 0.0);
  }
}

TEST_CASE("strong entropy: rhs matches a brute-force quadrature oracle") {
  auto vc = small_config(linear_flux(0.0), xonly_noise(0.25));
  vc.t_end = 0.3;
  solver::PathEnsemble v_ens(vc, [](double) { return 0.0; }, 1, 17, 2);
  const auto pair = calculus::build_entropy_pair(0.15);
  const auto psi = calculus::bump_test_function(0.08, 0.28, -0.7, 0.7);
  const double delta = 0.12, delta0 = 0.06;

  const auto tv = v_ens.solve_path(0);
  double lhs, rhs;
  verify::strong_entropy_path_terms(tv, tv, vc.noise, pair, psi, delta, delta0, 64, lhs, rhs);

  // Independent 4-fold loop over (s,y,r,x), straight from the definitions.
  const auto moll = calculus::build_mollifiers(delta0, delta);
  const auto& g = tv.grid;
  const double dts = tv.snapshot_dt();
  double oracle = 0.0;
  for (int s = 0; s < tv.n_snaps; ++s) {
    const double ts = tv.time(s);
    const double wt = (s == 0 || s == tv.n_snaps - 1) ? 0.5 * dts : dts;
    for (int jy = 0; jy < g.n_cells; ++jy) {
      const double y = g.center(jy);
      const double pv = psi.psi(ts, y);
      if (pv == 0.0) continue;
      for (int r = 0; r < tv.n_snaps; ++r) {
        const double w_rho = moll.rho(tv.time(r) - ts);
        if (w_rho == 0.0) continue;
        const double sv = vc.noise.sigma(y, tv.at(r, jy));
        for (int jx = 0; jx < g.n_cells; ++jx) {
          const double w_var = moll.varrho(g.wrap(g.center(jx) - y));
          if (w_var == 0.0) continue;
          oracle -= vc.noise.sigma(g.center(jx), tv.at(r, jx)) * sv *
                    pair.d2beta(tv.at(r, jx) - tv.at(r, jy)) * pv * w_rho * w_var * g.dx *
                    g.dx * dts * wt;
        }
      }
    }
  }
  CHECK(rhs == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(rhs < 0.0);
}

TEST_CASE("strong entropy: additive-noise self-probe reproduces the Ito correction") {
  // v = u~ = the same driven solution; the anticipative LHS estimator must
  // approach the RHS (their gap is the A(delta,delta0) remainder).
  auto vc = small_config(linear_flux(0.0), xonly_noise(0.25));
  vc.t_end = 0.3;
  const int m = 48;
  solver::PathEnsemble v_ens(vc, [](double) { return 0.0; }, m, 18, 2);
  const auto pair = calculus::build_entropy_pair(0.15);
  const auto psi = calculus::bump_test_function(0.08, 0.28, -0.7, 0.7);
  verify::StrongEntropyParams params;
  params.delta = 0.12;
  params.delta0_ladder = {0.08, 0.04, 0.02};
  const auto rungs = verify::strong_entropy_rungs(v_ens, v_ens, pair, psi, params, 1);
  // RHS is O(1) negative; the residual must be a small fraction of |RHS|
  const auto& last = rungs.back();
  CHECK(last.rhs < 0.0);
  CHECK(std::abs(last.residual) <= 0.25 * std::abs(last.rhs));
  // and within the Monte Carlo + discretization envelope
  const double budget =
      verify::strong_entropy_budget(vc.grid.dx, vc.dt * v_ens.stride(), m);
  CHECK(last.residual <= 2.0 * last.std_error + budget);
}

TEST_CASE("strong entropy: reflected beta gives the same residual") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  vc.t_end = 0.3;
  solver::PathEnsemble v_ens(vc, [](double x) { return bump(x, -0.2, 0.6, 0.5); }, 2, 19, 2);
  solver::PathEnsemble u_ens(vc, [](double x) { return bump(x, 0.2, 0.6, 0.4); }, 2, 19, 2);
  const auto pair = calculus::build_entropy_pair(0.15);
  calculus::EntropyPair reflected = pair;
  reflected.beta = [pair](double r) { return pair.beta(-r); };
  reflected.dbeta = [pair](double r) { return -pair.dbeta(-r); };
  reflected.d2beta = [pair](double r) { return pair.d2beta(-r); };
  const auto psi = calculus::bump_test_function(0.08, 0.28, -0.7, 0.7);

  const auto tv = v_ens.solve_path(0);
  const auto tu = u_ens.solve_path(0);
  double lhs1, rhs1, lhs2, rhs2;
  verify::strong_entropy_path_terms(tv, tu, vc.noise, pair, psi, 0.12, 0.06, 64, lhs1, rhs1);
  verify::strong_entropy_path_terms(tv, tu, vc.noise, reflected, psi, 0.12, 0.06, 64, lhs2,
                                    rhs2);
  CHECK(lhs1 == doctest::Approx(lhs2).epsilon(1e-12));
  CHECK(rhs1 == doctest::Approx(rhs2).epsilon(1e-12));
}

TEST_CASE("jbeta probe: zero noise and zero psi give zero") {
  auto vc = small_config(burgers_flux(), zero_noise());
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.6, 0.5); }, 2, 23, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi = calculus::bump_test_function(0.1, 0.35, -0.6, 0.6);
  CHECK(verify::jbeta_linf_probe(ens, pair, psi, 0.1, 0.05, 64, 1) == 0.0);

  auto vc2 = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  solver::PathEnsemble ens2(vc2, [](double x) { return bump(x, 0.0, 0.6, 0.5); }, 2, 23, 2);
  const auto psi0 = calculus::bump_test_function(0.1, 0.35, -0.6, 0.6, 0.0);
  CHECK(verify::jbeta_linf_probe(ens2, pair, psi0, 0.1, 0.05, 64, 1) == 0.0);
}

TEST_CASE("young diagnostic: affine flux commutes with averaging") {
  auto vc = small_config(linear_flux(1.0), gauss_sin_noise(0.15, 0.5));
  vc.eps_visc = 1.6e-2;
  const auto u0 = [](double x) { return bump(x, 0.0, 0.8, 0.5); };
  solver::PathEnsemble e1(vc, u0, 4, 29, 2);
  auto vc2 = vc;
  vc2.eps_visc = 8e-3;
  solver::PathEnsemble e2(vc2, u0, 4, 29, 2);
  const auto psi = calculus::bump_test_function(0.05, 0.35, -0.9, 0.9);

  CHECK(verify::young_d_value(e1, vc.flux, psi, 1) <= 1e-12);
  CHECK(verify::young_d_value(e2, vc.flux, psi, 1) <= 1e-12);

  std::vector<const solver::PathEnsemble*> ladder = {&e1, &e2};
  CHECK_THROWS_AS(verify::young_diagnostic(ladder, vc.flux, psi, true, 1), A4Violation);
  const auto rep = verify::young_diagnostic(ladder, vc.flux, psi, false, 1);
  CHECK(rep.estimate <= 1e-12);
}

TEST_CASE("young diagnostic: deterministic smooth field has tiny defect") {
  auto vc = small_config(burgers_flux(), zero_noise());
  vc.t_end = 0.2;  // pre-shock for this amplitude
  const auto u0 = [](double x) { return bump(x, 0.0, 1.2, 0.3); };
  solver::PathEnsemble ens(vc, u0, 1, 31, 2);
  const auto psi = calculus::bump_test_function(0.02, 0.18, -0.9, 0.9);
  const double d = verify::young_d_value(ens, vc.flux, psi, 1);
  CHECK(d < 1e-5);
}

TEST_CASE("cauchy convergence: identical viscosities give zero") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  const auto u0 = [](double x) { return bump(x, 0.0, 0.8, 0.5); };
  solver::PathEnsemble a(vc, u0, 3, 37, 2);
  solver::PathEnsemble b(vc, u0, 3, 37, 2);
  auto vc2 = vc;
  vc2.eps_visc = 1.6e-2;
  solver::PathEnsemble c(vc2, u0, 3, 37, 2);
  // ladder (c, a, b): eps 1.6e-2, 8e-3, 8e-3; the repeated rung differs by 0
  std::vector<const solver::PathEnsemble*> ladder = {&c, &a, &b};
  const auto rep = verify::cauchy_convergence(ladder, 1);
  CHECK(rep.estimate == 0.0);  // last rung: identical eps twice
  CHECK(rep.passed);
}

TEST_CASE("std error halves when the ensemble doubles (within 1.6x)") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.25, 0.5));
  const auto u0a = [](double x) { return bump(x, -0.3, 0.6, 0.6); };
  const auto u0b = [](double x) { return bump(x, 0.3, 0.6, 0.45); };
  solver::PathEnsemble a1(vc, u0a, 24, 101, 2);
  solver::PathEnsemble b1(vc, u0b, 24, 101, 2);
  solver::PathEnsemble a2(vc, u0a, 48, 101, 2);
  solver::PathEnsemble b2(vc, u0b, 48, 101, 2);
  const auto r1 = verify::l1_contraction(a1, b1, {0.3}, 0.05, 1);
  const auto r2 = verify::l1_contraction(a2, b2, {0.3}, 0.05, 1);
  REQUIRE(r1.std_error > 0.0);
  const double ratio = r1.std_error / r2.std_error;
  CHECK(ratio > 2.0 / 1.6);
  CHECK(ratio < 2.0 * 1.6);
}

TEST_CASE("jbeta probe: growth under delta0 halving stays within the 3/2-type bound") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  vc.t_end = 0.4;
  solver::PathEnsemble ens(vc, [](double x) { return bump(x, 0.0, 0.7, 0.5); }, 12, 61, 2);
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto psi = calculus::bump_test_function(0.1, 0.35, -0.6, 0.6);
  const double delta = 0.1;
  std::vector<double> d0s = {0.16, 0.08, 0.04};
  std::vector<double> probes;
  for (double d0 : d0s) {
    probes.push_back(verify::jbeta_linf_probe(ens, pair, psi, delta, d0, 64, 1));
  }
  for (double p : probes) CHECK(p > 0.0);
  // halving delta0 may grow the estimate by at most 2^{1.8}
  for (std::size_t i = 1; i < probes.size(); ++i) {
    CHECK(probes[i] / probes[i - 1] <= std::pow(2.0, 1.8));
  }
  // fitted log-log slope >= -1.8
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(probes.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(d0s[static_cast<std::size_t>(i)]);
    const double ly = std::log(probes[static_cast<std::size_t>(i)]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= -1.8);
}

TEST_CASE("deterministic Burgers: contraction and comparison without noise") {
  auto vc = small_config(burgers_flux(), zero_noise());
  vc.t_end = 0.4;
  const auto u0 = [](double x) { return bump(x, -0.4, 0.5, 0.7) + bump(x, 0.3, 0.4, 0.5); };
  const auto v0 = [](double x) { return bump(x, -0.35, 0.5, 0.5) + bump(x, 0.25, 0.4, 0.6); };
  solver::PathEnsemble a(vc, u0, 1, 61, 2);
  solver::PathEnsemble b(vc, v0, 1, 61, 2);
  const auto rep = verify::l1_contraction(a, b, {0.1, 0.2, 0.3, 0.4}, 0.05, 1);
  CHECK(rep.passed);

  // ordered data with disjoint bumps: positive-part norm nonincreasing
  const auto big = [](double x) { return bump(x, -0.4, 0.5, 0.7) + bump(x, 0.35, 0.4, 0.5); };
  const auto small_ = [](double x) { return bump(x, -0.4, 0.5, 0.4) + bump(x, 0.35, 0.4, 0.2); };
  solver::PathEnsemble hi(vc, big, 1, 62, 2);
  solver::PathEnsemble lo(vc, small_, 1, 62, 2);
  const auto cmp = verify::comparison(lo, hi, {0.1, 0.2, 0.3, 0.4}, 0.05, 1);
  CHECK(cmp.passed);
}

TEST_CASE("cauchy convergence op on a noiseless Burgers ladder") {
  const auto u0 = [](double x) { return bump(x, -0.2, 0.9, 0.8); };
  std::vector<std::unique_ptr<solver::PathEnsemble>> owners;
  std::vector<const solver::PathEnsemble*> ladder;
  for (double eps : {1.6e-2, 8e-3, 4e-3}) {
    solver::ViscousConfig vc;
    vc.grid = core::build_grid(-1.0, 1.0, 256);
    vc.eps_visc = eps;
    vc.t_end = 0.3;
    vc.dt = 1.5e-4;
    vc.flux = burgers_flux();
    vc.noise = zero_noise();
    vc.u_lo = -0.9;
    vc.u_hi = 0.9;
    owners.push_back(std::make_unique<solver::PathEnsemble>(vc, u0, 1, 63, 100));
    ladder.push_back(owners.back().get());
  }
  const auto rep = verify::cauchy_convergence(ladder, 1);
  CHECK(rep.passed);
  CHECK(rep.estimate < rep.threshold);  // rung differences genuinely shrink
}

TEST_CASE("strong entropy with a frozen probe field") {
  auto vc = small_config(burgers_flux(), gauss_sin_noise(0.2, 0.5));
  vc.t_end = 0.3;
  solver::PathEnsemble v_ens(vc, [](double x) { return bump(x, -0.1, 0.7, 0.5); }, 1, 64, 2);
  const auto tv = v_ens.solve_path(0);
  // probe frozen at a bump; same snapshot layout as the candidate
  solver::Trajectory tu = tv;
  for (int s = 0; s < tu.n_snaps; ++s) {
    for (int j = 0; j < tu.grid.n_cells; ++j) {
      tu.data[static_cast<std::size_t>(s) * tu.grid.n_cells + j] =
          bump(tu.grid.center(j), 0.1, 0.6, 0.4);
    }
  }
  const auto pair = calculus::build_entropy_pair(0.15);
  const auto psi = calculus::bump_test_function(0.08, 0.28, -0.7, 0.7);
  double lhs, rhs;
  verify::strong_entropy_path_terms(tv, tu, vc.noise, pair, psi, 0.12, 0.06, 64, lhs, rhs);
  CHECK(std::isfinite(lhs));
  CHECK(std::isfinite(rhs));
  // our sigma is nonnegative and beta'' >= 0, so the quadratic term has a sign
  CHECK(rhs <= 0.0);
}
