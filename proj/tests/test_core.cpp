#include <cmath>
#include <vector>

#include "doctest.h"
#include "stochscl/core/grid.hpp"
#include "stochscl/core/models.hpp"
#include "stochscl/core/wiener.hpp"
#include "stochscl/util/errors.hpp"

using namespace stochscl;

TEST_CASE("build_grid basics") {
  const auto g = core::build_grid(0.0, 1.0, 100);
  CHECK(g.dx == doctest::Approx(0.01).epsilon(1e-14));

  const auto g2 = core::build_grid(-1.0, 1.0, 8);
  CHECK(g2.center(0) == doctest::Approx(-0.875).epsilon(1e-14));

  CHECK_THROWS_AS(core::build_grid(0.0, 0.0, 10), InvalidDomain);
  CHECK_THROWS_AS(core::build_grid(0.0, 1.0, 7), InvalidDomain);
}

TEST_CASE("grid periodic wrap is exact") {
  const auto g = core::build_grid(-2.0, 2.0, 64);
  CHECK(g.neighbor(63, 1) == 0);
  CHECK(g.neighbor(0, -1) == 63);
  // shifting by n_cells is the identity
  for (int j = 0; j < g.n_cells; ++j) {
    CHECK(g.neighbor(j, g.n_cells) == j);
    CHECK(g.neighbor(j, -3 * g.n_cells) == j);
  }
  CHECK(g.wrap(3.9) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("philox known-answer vectors") {
  // Reference vectors for philox4x32-10 (Random123 distribution).
  const auto zero = core::philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = core::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("wiener path determinism and structure") {
  const auto w1 = core::sample_wiener(1234, 7, 500, 1e-3);
  const auto w2 = core::sample_wiener(1234, 7, 500, 1e-3);
  REQUIRE(w1.increments.size() == 500);
  CHECK(w1.increments == w2.increments);  // bit-identical
  CHECK(w1.cumulative == w2.cumulative);
  CHECK(w1.cumulative[0] == 0.0);
  for (int k = 0; k < 500; ++k) {
    CHECK(w1.cumulative[k + 1] == w1.cumulative[k] + w1.increments[k]);
  }
  const auto w3 = core::sample_wiener(1234, 8, 500, 1e-3);
  CHECK(w1.increments != w3.increments);
}

TEST_CASE("wiener increments have the right variance") {
  // n_steps = 1000, dt = 1e-3: sample variance within 10% of dt.
  const double dt = 1e-3;
  const auto w = core::sample_wiener(99, 0, 1000, dt);
  double mean = 0.0;
  for (double d : w.increments) mean += d;
  mean /= 1000.0;
  double var = 0.0;
  for (double d : w.increments) var += (d - mean) * (d - mean);
  var /= 999.0;
  CHECK(var == doctest::Approx(dt).epsilon(0.10));
}

TEST_CASE("Var(W(T)) over many paths matches T" * doctest::timeout(120)) {
  // Monte Carlo oracle: W(1) is a sum of i.i.d. Gaussians, Var = T = 1.
  const int m = 100000;
  const int n = 16;
  const double dt = 1.0 / n;
  double sum = 0.0, sumsq = 0.0;
  for (int p = 0; p < m; ++p) {
    const auto w = core::sample_wiener(2024, static_cast<std::uint64_t>(p), n, dt);
    const double wt = w.cumulative[n];
    sum += wt;
    sumsq += wt * wt;
  }
  const double mean = sum / m;
  const double var = sumsq / m - mean * mean;
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
  // mean of W(T) within 4*sqrt(T/M) of 0
  CHECK(std::abs(mean) < 4.0 * std::sqrt(1.0 / m));
}

TEST_CASE("validate_noise accepts the documented Gaussian-decay model") {
  // sigma(x,u) = 0.2 e^{-x^2} u with declared C = 0.4 on |x|<=3, |u|<=2.
  core::NoiseModel model;
  model.sigma = [](double x, double u) { return 0.2 * std::exp(-x * x) * u; };
  model.lipschitz_c = 0.4;
  model.envelope_g = [](double x) { return 0.2 * std::exp(-x * x); };

  std::vector<double> xs, us;
  for (int i = 0; i <= 30; ++i) xs.push_back(-3.0 + 6.0 * i / 30);
  for (int i = 0; i <= 20; ++i) us.push_back(-2.0 + 4.0 * i / 20);
  const auto rep = core::validate_noise(model, xs, us);
  CHECK(rep.passed);
  // analytic bound: sup |dsigma/du| = 0.2, sup |dsigma/dx| = 0.2*2*max|2x e^{-x^2}|
  CHECK(rep.lipschitz_ratio <= 0.4);
  CHECK(rep.envelope_ratio <= 1.0 + 1e-9);
}

TEST_CASE("validate_noise zero noise") {
  core::NoiseModel model;
  model.sigma = [](double, double) { return 0.0; };
  model.lipschitz_c = 0.0;
  model.envelope_g = [](double) { return 0.0; };
  const auto rep = core::validate_noise(model, {0.0, 1.0}, {0.0, 1.0});
  CHECK(rep.passed);
  CHECK(rep.lipschitz_ratio == 0.0);
  CHECK(rep.envelope_ratio == 0.0);
}

TEST_CASE("validate_noise rejects quadratic growth") {
  core::NoiseModel model;
  model.sigma = [](double, double u) { return u * u; };
  model.lipschitz_c = 1.0;
  model.envelope_g = [](double) { return 1.0; };
  std::vector<double> us;
  for (int i = 0; i <= 10; ++i) us.push_back(i);
  CHECK_THROWS_AS(core::validate_noise(model, {0.0}, us), AssumptionViolated);
}

TEST_CASE("validate_flux on burgers and linear") {
  core::FluxModel burgers;
  burgers.f = [](double u) { return 0.5 * u * u; };
  burgers.df = [](double u) { return u; };
  burgers.d2f = [](double) { return 1.0; };
  burgers.growth_degree = 2;

  std::vector<double> rs;
  for (int i = 0; i <= 50; ++i) rs.push_back(-2.0 + 4.0 * i / 50);
  const auto rep = core::validate_flux(burgers, rs);
  CHECK(rep.passed);
  CHECK(rep.a4_fraction == doctest::Approx(1.0));

  core::FluxModel linear;
  linear.f = [](double u) { return 3.0 * u; };
  linear.df = [](double) { return 3.0; };
  linear.d2f = [](double) { return 0.0; };
  linear.growth_degree = 1;
  const auto rep2 = core::validate_flux(linear, rs);
  CHECK(rep2.passed);
  CHECK(rep2.a4_fraction == 0.0);
}

TEST_CASE("validate_flux rejects a wrong derivative") {
  core::FluxModel bad;
  bad.f = [](double u) { return u * u; };
  bad.df = [](double u) { return 3.0 * u; };  // wrong
  bad.d2f = [](double) { return 3.0; };
  bad.growth_degree = 2;
  std::vector<double> rs = {0.5, 1.0, 2.0};
  CHECK_THROWS_AS(core::validate_flux(bad, rs), DerivativeMismatch);
}
