#include "stochscl/core/wiener.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stochscl::core {

namespace {

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::uint32_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo32(kPhiloxM0, c[0], hi0, lo0);
    mulhilo32(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

double gaussian_at(std::uint64_t seed, std::uint64_t path_id, std::uint64_t step) {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32),
      static_cast<std::uint32_t>(path_id), static_cast<std::uint32_t>(path_id >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                            static_cast<std::uint32_t>(seed >> 32)};
  const auto r = philox4x32(counter, key);
  const std::uint64_t bits1 = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
  const std::uint64_t bits2 = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
  // u1 in (0,1] keeps the log finite; u2 in [0,1).
  const double u1 = static_cast<double>((bits1 >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(bits2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

WienerPath sample_wiener(std::uint64_t seed, std::uint64_t path_id, int n_steps, double dt) {
  if (n_steps < 1) throw std::invalid_argument("sample_wiener: n_steps must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_wiener: dt must be positive");
  WienerPath w;
  w.seed = seed;
  w.path_id = path_id;
  w.dt = dt;
  w.increments.resize(n_steps);
  w.cumulative.resize(n_steps + 1);
  const double root_dt = std::sqrt(dt);
  w.cumulative[0] = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    w.increments[k] = root_dt * gaussian_at(seed, path_id, static_cast<std::uint64_t>(k));
    w.cumulative[k + 1] = w.cumulative[k] + w.increments[k];
  }
  return w;
}

}  // namespace stochscl::core
