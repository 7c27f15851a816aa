#ifndef STOCHSCL_CORE_MODELS_HPP
#define STOCHSCL_CORE_MODELS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stochscl/core/grid.hpp"

namespace stochscl::core {

/// Flux F with its first two derivatives and the polynomial growth degree.
struct FluxModel {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  int growth_degree = 1;
};

/// Noise coefficient sigma(x,u) with its Lipschitz constant and envelope g.
struct NoiseModel {
  std::function<double(double, double)> sigma;
  double lipschitz_c = 0.0;
  std::function<double(double)> envelope_g;
};

/// Monte Carlo ensemble description; path_id ranges over 0..n_paths-1 and all
/// paths share (dt, horizon).
struct EnsembleSpec {
  int n_paths = 0;
  std::uint64_t base_seed = 0;
  double t_end = 0.0;
  double dt = 0.0;
  Grid1D grid;

  int n_steps() const { return static_cast<int>(std::llround(t_end / dt)); }
};

struct NoiseValidation {
  double lipschitz_ratio = 0.0;  // max |dsigma| / (|du| + |dx|) over sample pairs
  double envelope_ratio = 0.0;   // max |sigma| / (g(x)(1+|u|)) over samples
  bool passed = false;
};

struct FluxValidation {
  double max_df_rel_error = 0.0;   // central finite differences vs declared df
  double max_d2f_rel_error = 0.0;  // same for d2f vs df
  double a4_fraction = 0.0;        // fraction of samples with |F''| > 1e-12
  bool passed = false;
};

/// Checks A2 (Lipschitz) and A3 (envelope) on the sampled pairs.
/// Throws AssumptionViolated naming the offending sample pair on failure.
NoiseValidation validate_noise(const NoiseModel& model, const std::vector<double>& x_samples,
                               const std::vector<double>& u_samples);

/// Checks derivative consistency of (f, df, d2f) by central finite differences
/// and reports the A4 heuristic. Throws DerivativeMismatch above 1e-6 relative.
FluxValidation validate_flux(const FluxModel& model, const std::vector<double>& r_samples);

}  // namespace stochscl::core

#endif
