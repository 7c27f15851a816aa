#ifndef STOCHSCL_CORE_WIENER_HPP
#define STOCHSCL_CORE_WIENER_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace stochscl::core {

/// Philox4x32-10 counter-based generator (Salmon et al.).
///
/// Stateless: each (key, counter) pair maps to four independent 32-bit words,
/// so samples can be drawn in any order by any worker and still agree bit for
/// bit with a serial run.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

/// Standard normal variate keyed on (seed, path_id, step) via Philox + Box-Muller.
double gaussian_at(std::uint64_t seed, std::uint64_t path_id, std::uint64_t step);

/// One discretized Brownian driver W(t_k), t_k = k*dt.
///
/// increments[k] = W(t_{k+1}) - W(t_k) ~ N(0, dt), cumulative[k] = W(t_k) with
/// cumulative[0] = 0. Fully determined by (seed, path_id, dt, length).
struct WienerPath {
  std::uint64_t seed = 0;
  std::uint64_t path_id = 0;
  double dt = 0.0;
  std::vector<double> increments;
  std::vector<double> cumulative;  // size increments.size() + 1

  int n_steps() const { return static_cast<int>(increments.size()); }
  double horizon() const { return dt * n_steps(); }

  /// W at the k-th grid time.
  double at_step(int k) const { return cumulative[static_cast<std::size_t>(k)]; }
};

/// Samples the driver; pure function of its arguments.
WienerPath sample_wiener(std::uint64_t seed, std::uint64_t path_id, int n_steps, double dt);

}  // namespace stochscl::core

#endif
