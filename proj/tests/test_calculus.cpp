#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "stochscl/calculus/entropy_flux.hpp"
#include "stochscl/calculus/entropy_pair.hpp"
#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/core/models.hpp"

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

}  // namespace

TEST_CASE("profile constants M1 and M2 recomputed by quadrature") {
  // M2 = sup beta'' = beta''(0) = 15/8 for the quintic profile.
  double m2 = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double r = -1.0 + 2.0 * i / 10000;
    m2 = std::max(m2, calculus::beta_profile_d2(r));
  }
  CHECK(m2 == doctest::Approx(1.875).epsilon(1e-12));

  // beta(1) from integrating beta' with an independent quadrature; then
  // M1 = 1 - beta(1) = 5/16.
  const double beta1 =
      test_oracle::adaptive_simpson([](double r) { return calculus::beta_profile_d1(r); }, 0.0,
                                    1.0, 1e-14);
  CHECK(1.0 - beta1 == doctest::Approx(5.0 / 16.0).epsilon(1e-10));

  // beta' really is the antiderivative of beta'' with beta'(1) = 1.
  const double bp1 = test_oracle::adaptive_simpson(
      [](double r) { return calculus::beta_profile_d2(r); }, 0.0, 1.0, 1e-14);
  CHECK(bp1 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("entropy pair envelope and symmetry") {
  for (double eps : {1.0, 0.1, 0.01}) {
    const auto pair = calculus::build_entropy_pair(eps);
    CHECK(pair.beta(0.0) == 0.0);
    CHECK(pair.m1 == doctest::Approx(0.3125));
    CHECK(pair.m2 == doctest::Approx(1.875));
    double worst_gap = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double r = -3.0 * eps + 6.0 * eps * i / 10000;
      const double b = pair.beta(r);
      CHECK(b <= std::abs(r) + 1e-15);
      CHECK(b >= std::abs(r) - pair.m1 * eps - 1e-15);
      worst_gap = std::max(worst_gap, std::abs(r) - b);
      CHECK(pair.beta(-r) == doctest::Approx(b).epsilon(1e-14));
      CHECK(pair.dbeta(-r) == doctest::Approx(-pair.dbeta(r)).epsilon(1e-14));
      CHECK(pair.d2beta(r) >= 0.0);
      if (std::abs(r) > eps) {
        CHECK(pair.d2beta(r) == 0.0);
        CHECK(pair.dbeta(r) == (r > 0 ? 1.0 : -1.0));
      } else {
        CHECK(pair.d2beta(r) <= pair.m2 / eps + 1e-15);
      }
    }
    // sup(|r| - beta) attains M1*eps on the grid
    CHECK(worst_gap == doctest::Approx(pair.m1 * eps).epsilon(1e-9));
  }
}

TEST_CASE("beta value at eps=0.1 against the quadrature oracle") {
  const auto pair = calculus::build_entropy_pair(0.1);
  // oracle: beta_eps(0.05) = int_0^{0.05} beta_eps'(r) dr by adaptive Simpson
  const double oracle = test_oracle::adaptive_simpson(
      [&](double r) { return pair.dbeta(r); }, 0.0, 0.05, 1e-14);
  CHECK(oracle == doctest::Approx(0.0215820312500).epsilon(1e-10));
  CHECK(pair.beta(0.05) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("d2beta integrates to 2 over [-eps, eps]") {
  for (double eps : {1.0, 0.05}) {
    const auto pair = calculus::build_entropy_pair(eps);
    const double total = test_oracle::adaptive_simpson(
        [&](double r) { return pair.d2beta(r); }, -eps, eps, 1e-13);
    CHECK(total == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("entropy flux: trivial and linear cases") {
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto burgers = burgers_flux();
  CHECK(calculus::entropy_flux(pair, burgers, 0.7, 0.7) == 0.0);

  // linear flux: F^beta(a,b) = c beta(a-b)
  const auto lin = linear_flux(2.5);
  for (double a : {-0.3, 0.05, 1.4}) {
    for (double b : {-1.0, 0.0, 0.12}) {
      const double expected = 2.5 * pair.beta(a - b);
      CHECK(calculus::entropy_flux(pair, lin, a, b) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("entropy flux vs fine Riemann-sum oracle on Burgers") {
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto flux = burgers_flux();
  const double a = 1.0, b = 0.0;
  const double oracle = test_oracle::riemann_midpoint(
      [&](double s) { return pair.dbeta(s - b) * flux.df(s); }, b, a, 1000000);
  const double got = calculus::entropy_flux(pair, flux, a, b);
  CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("kruzkov flux") {
  const auto flux = burgers_flux();
  CHECK(calculus::kruzkov_flux(flux, 0.4, 0.4) == 0.0);
  CHECK(calculus::kruzkov_flux(flux, 2.0, 1.0) == doctest::Approx(1.5));
  for (double a : {-1.0, 0.3, 2.0}) {
    for (double b : {-0.5, 0.0, 1.7}) {
      CHECK(calculus::kruzkov_flux(flux, a, b) ==
            doctest::Approx(calculus::kruzkov_flux(flux, b, a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("entropy flux error bound behaves like O(eps)") {
  const auto flux = burgers_flux();
  const double u = 1.0, v = 0.0;
  const auto p1 = calculus::build_entropy_pair(0.1);
  const auto p2 = calculus::build_entropy_pair(0.05);
  CHECK(calculus::entropy_flux_error_bound(p1, flux, u, u) == 0.0);
  const double e1 = calculus::entropy_flux_error_bound(p1, flux, u, v);
  const double e2 = calculus::entropy_flux_error_bound(p2, flux, u, v);
  const double ratio = e2 / e1;
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.7);

  // |u-v| > eps, linear flux: closed form |c| M1 eps
  const auto lin = linear_flux(-1.5);
  const double err = calculus::entropy_flux_error_bound(p1, lin, 0.9, 0.1);
  CHECK(err == doctest::Approx(1.5 * p1.m1 * 0.1).epsilon(1e-10));
}

TEST_CASE("entropy flux consistency: d/da F^beta(a,b) = beta'(a-b) F'(a)") {
  const auto pair = calculus::build_entropy_pair(0.2);
  const auto flux = burgers_flux();
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const double a = dist(gen), b = dist(gen);
    const double fd = test_oracle::central_diff(
        [&](double s) { return calculus::entropy_flux(pair, flux, s, b); }, a, 1e-6);
    const double expect = pair.dbeta(a - b) * flux.df(a);
    CHECK(fd == doctest::Approx(expect).epsilon(1e-5));
  }
}

TEST_CASE("mollifiers: mass, support, symmetry") {
  const auto m = calculus::build_mollifiers(0.25, 0.4);
  const double mass_rho = test_oracle::adaptive_simpson(m.rho, -0.25, 0.0, 1e-13);
  CHECK(mass_rho == doctest::Approx(1.0).epsilon(1e-10));
  const double mass_varrho = test_oracle::adaptive_simpson(m.varrho, -0.4, 0.4, 1e-13);
  CHECK(mass_varrho == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(m.rho(0.001 * 0.25) == 0.0);
  CHECK(m.rho(-1.001 * 0.25) == 0.0);
  CHECK(m.rho(-0.1) > 0.0);
  for (double x : {0.05, 0.2, 0.3999}) {
    CHECK(m.varrho(x) == doctest::Approx(m.varrho(-x)).epsilon(1e-14));
  }
  CHECK(m.varrho(0.41) == 0.0);
}

TEST_CASE("doubled test function support") {
  const auto moll = calculus::build_mollifiers(0.2, 0.1);
  const auto psi = calculus::bump_test_function(0.0, 1.0, -1.0, 1.0);
  const calculus::DoubledTestFunction dt{moll, psi};

  const double s = 0.5, y = 0.0;
  CHECK(calculus::doubled_test_value(dt, s + 0.1 * 0.2, y, s, y) == 0.0);  // t > s
  CHECK(calculus::doubled_test_value(dt, s - 0.21, y, s, y) == 0.0);       // t < s - delta0
  CHECK(calculus::doubled_test_value(dt, s - 0.1, y + 0.1, s, y) == 0.0);  // |x-y| >= delta
  CHECK(calculus::doubled_test_value(dt, s - 0.1, y + 0.05, s, y) > 0.0);
  CHECK(calculus::doubled_test_value(dt, s - 0.1, 0.0, s, 1.5) == 0.0);    // psi support
}

TEST_CASE("test function derivatives are FD-consistent") {
  const auto psi = calculus::bump_test_function(0.1, 0.6, -0.8, 0.4);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> td(0.1, 0.6), xd(-0.8, 0.4);
  for (int i = 0; i < 50; ++i) {
    const double t = td(gen), x = xd(gen);
    const double fdt =
        test_oracle::central_diff([&](double s) { return psi.psi(s, x); }, t, 1e-6);
    const double fdx =
        test_oracle::central_diff([&](double s) { return psi.psi(t, s); }, x, 1e-6);
    const double fdxx = (psi.psi(t, x + 1e-5) - 2.0 * psi.psi(t, x) + psi.psi(t, x - 1e-5)) / 1e-10;
    CHECK(psi.dpsi_dt(t, x) == doctest::Approx(fdt).epsilon(1e-5));
    CHECK(psi.dpsi_dx(t, x) == doctest::Approx(fdx).epsilon(1e-5));
    CHECK(psi.d2psi_dxx(t, x) == doctest::Approx(fdxx).epsilon(1e-3));
    CHECK(psi.psi(t, x) >= 0.0);
  }
  CHECK(psi.psi(0.05, 0.0) == 0.0);
  CHECK(psi.psi(0.3, 0.5) == 0.0);
}

TEST_CASE("entropy flux table matches direct evaluation") {
  const auto pair = calculus::build_entropy_pair(0.1);
  const auto flux = burgers_flux();
  const double k = 0.3;
  calculus::EntropyFluxTable table(pair, flux, k, -1.5, 1.5, 512);
  for (double a : {-1.2, -0.4, 0.0, 0.2999, 0.3, 0.31, 0.9, 1.45}) {
    CHECK(table(a) == doctest::Approx(calculus::entropy_flux(pair, flux, a, k)).epsilon(1e-7));
  }
}
