#include "stochscl/cli/registry.hpp"

#include <cmath>
#include <numbers>

#include "stochscl/util/errors.hpp"

namespace stochscl::cli {

namespace {

// max of |2x e^{-x^2}| over the real line, at x = 1/sqrt(2).
const double kGaussSlopeMax = std::sqrt(2.0) * std::exp(-0.5);

double bump_profile(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return w * w * w;
}

}  // namespace

core::FluxModel build_flux(const std::string& name, const ParamReader& param) {
  core::FluxModel m;
  if (name == "burgers") {
    m.f = [](double u) { return 0.5 * u * u; };
    m.df = [](double u) { return u; };
    m.d2f = [](double) { return 1.0; };
    m.growth_degree = 2;
    return m;
  }
  if (name == "linear") {
    const double c = param("c", 1.0);
    m.f = [c](double u) { return c * u; };
    m.df = [c](double) { return c; };
    m.d2f = [](double) { return 0.0; };
    m.growth_degree = 1;
    return m;
  }
  if (name == "zero") {
    m.f = [](double) { return 0.0; };
    m.df = [](double) { return 0.0; };
    m.d2f = [](double) { return 0.0; };
    m.growth_degree = 0;
    return m;
  }
  throw ConfigError("model.flux: unknown flux model '" + name + "'");
}

core::NoiseModel build_noise(const std::string& name, const ParamReader& param) {
  core::NoiseModel m;
  if (name == "zero") {
    m.sigma = [](double, double) { return 0.0; };
    m.lipschitz_c = 0.0;
    m.envelope_g = [](double) { return 0.0; };
    return m;
  }
  if (name == "const") {
    const double s0 = param("sigma0", 0.3);
    m.sigma = [s0](double, double) { return s0; };
    m.lipschitz_c = 0.0;
    m.envelope_g = [s0](double) { return std::abs(s0); };
    return m;
  }
  if (name == "xonly") {
    // sigma(x,u) = amp * exp(-x^2), additive in u.
    const double amp = param("amp", 0.2);
    m.sigma = [amp](double x, double) { return amp * std::exp(-x * x); };
    m.lipschitz_c = std::abs(amp) * kGaussSlopeMax;
    m.envelope_g = [amp](double x) { return std::abs(amp) * std::exp(-x * x); };
    return m;
  }
  if (name == "gauss_linear") {
    // sigma(x,u) = amp * exp(-x^2) * u; Lipschitz constant declared for
    // |u| <= u_cap (A2 holds on the working range, not on all of R).
    const double amp = param("amp", 0.2);
    const double u_cap = param("u_cap", 2.0);
    m.sigma = [amp](double x, double u) { return amp * std::exp(-x * x) * u; };
    m.lipschitz_c = std::abs(amp) * std::max(1.0, u_cap * kGaussSlopeMax);
    m.envelope_g = [amp](double x) { return std::abs(amp) * std::exp(-x * x); };
    return m;
  }
  if (name == "gauss_sin") {
    // sigma(x,u) = amp * exp(-x^2) * (1 + wobble * sin u).
    const double amp = param("amp", 0.2);
    const double wob = param("wobble", 0.5);
    m.sigma = [amp, wob](double x, double u) {
      return amp * std::exp(-x * x) * (1.0 + wob * std::sin(u));
    };
    m.lipschitz_c =
        std::abs(amp) * std::max(std::abs(wob), kGaussSlopeMax * (1.0 + std::abs(wob)));
    m.envelope_g = [amp, wob](double x) {
      return std::abs(amp) * (1.0 + std::abs(wob)) * std::exp(-x * x);
    };
    return m;
  }
  throw ConfigError("model.noise: unknown noise model '" + name + "'");
}

std::function<double(double)> build_u0(const std::string& name, const ParamReader& param) {
  if (name == "zero") {
    return [](double) { return 0.0; };
  }
  if (name == "bump") {
    const double c = param("center", 0.0);
    const double w = param("width", 1.0);
    const double a = param("amplitude", 1.0);
    return [c, w, a](double x) { return a * bump_profile(2.0 * (x - c) / w); };
  }
  if (name == "two_bumps") {
    const double c1 = param("center1", -0.4), w1 = param("width1", 0.5),
                 a1 = param("amplitude1", 0.6);
    const double c2 = param("center2", 0.4), w2 = param("width2", 0.5),
                 a2 = param("amplitude2", 0.45);
    return [=](double x) {
      return a1 * bump_profile(2.0 * (x - c1) / w1) + a2 * bump_profile(2.0 * (x - c2) / w2);
    };
  }
  if (name == "box") {
    const double lo = param("left", -0.5), hi = param("right", 0.5), h = param("height", 1.0);
    return [lo, hi, h](double x) { return (x >= lo && x <= hi) ? h : 0.0; };
  }
  if (name == "sine_bump") {
    const double c = param("center", 0.0), w = param("width", 1.0), a = param("amplitude", 0.5);
    return [c, w, a](double x) {
      if (std::abs(x - c) >= 0.5 * w) return 0.0;
      return a * std::sin(2.0 * std::numbers::pi * (x - c) / w);
    };
  }
  throw ConfigError("model.u0: unknown initial-data model '" + name + "'");
}

std::string list_models() {
  return
      "flux models:\n"
      "  burgers            F(u) = u^2/2\n"
      "  linear             F(u) = c u            params: c (1.0)\n"
      "  zero               F(u) = 0\n"
      "noise models:\n"
      "  zero               sigma = 0\n"
      "  const              sigma = sigma0        params: sigma0 (0.3)\n"
      "  xonly              sigma = amp exp(-x^2) params: amp (0.2)\n"
      "  gauss_linear       sigma = amp exp(-x^2) u\n"
      "                                           params: amp (0.2), u_cap (2.0)\n"
      "  gauss_sin          sigma = amp exp(-x^2)(1 + wobble sin u)\n"
      "                                           params: amp (0.2), wobble (0.5)\n"
      "initial data:\n"
      "  zero               u0 = 0\n"
      "  bump               C^2 bump              params: center (0.0), width (1.0), amplitude (1.0)\n"
      "  two_bumps          sum of two bumps      params: center1, width1, amplitude1, center2, width2, amplitude2\n"
      "  box                indicator             params: left (-0.5), right (0.5), height (1.0)\n"
      "  sine_bump          one sine period, compactly supported\n"
      "                                           params: center (0.0), width (1.0), amplitude (0.5)\n";
}

}  // namespace stochscl::cli
