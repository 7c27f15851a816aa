#include "stochscl/oracle/exact.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stochscl/util/errors.hpp"

namespace stochscl::oracle {

namespace {
constexpr double kBisectTol = 1e-12;
constexpr int kBisectMaxIter = 200;
constexpr int kProbePoints = 4096;
}  // namespace

void RiemannProblem::validate() const {
  const double lo = std::min(u_left, u_right);
  const double hi = std::max(u_left, u_right);
  const int n = 256;
  for (int i = 0; i <= n; ++i) {
    const double r = lo + (hi - lo) * i / n;
    if (flux.d2f(r) < -1e-12) {
      std::ostringstream os;
      os << "RiemannProblem: flux is not convex at r=" << r;
      throw InvalidDomain(os.str());
    }
  }
}

double burgers_riemann(double u_left, double u_right, double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("burgers_riemann: t must be positive");
  if (u_left == u_right) return u_left;
  if (u_left > u_right) {
    const double s = 0.5 * (u_left + u_right);  // Rankine-Hugoniot
    return (x < s * t) ? u_left : u_right;
  }
  if (x <= u_left * t) return u_left;
  if (x >= u_right * t) return u_right;
  return x / t;  // self-similar fan
}

double linear_additive_exact(const std::function<double(double)>& u0, double c, double sigma0,
                             const core::WienerPath& path, const core::Grid1D& grid, double t,
                             double x) {
  const double steps = t / path.dt;
  const long k = std::lround(steps);
  if (std::abs(steps - static_cast<double>(k)) > 1e-9 || k < 0 || k > path.n_steps()) {
    throw std::invalid_argument("linear_additive_exact: t is not on the path time grid");
  }
  const double L = grid.width();
  double xi = std::fmod(x - c * t - grid.x_min, L);
  if (xi < 0.0) xi += L;
  xi += grid.x_min;
  return u0(xi) + sigma0 * path.at_step(static_cast<int>(k));
}

double characteristic_blowup_time(const std::function<double(double)>& u0,
                                  const core::FluxModel& flux, double probe_lo, double probe_hi) {
  const double h = (probe_hi - probe_lo) / kProbePoints;
  double steepest = 0.0;  // most negative d/dxi F'(u0(xi))
  for (int i = 0; i <= kProbePoints; ++i) {
    const double xi = probe_lo + i * h;
    const double d = (flux.df(u0(xi + 0.5 * h)) - flux.df(u0(xi - 0.5 * h))) / h;
    steepest = std::min(steepest, d);
  }
  if (steepest >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / steepest;
}

double smooth_characteristics(const std::function<double(double)>& u0,
                              const core::FluxModel& flux, double t, double x, double probe_lo,
                              double probe_hi) {
  if (t == 0.0) return u0(x);
  const double t_star = characteristic_blowup_time(u0, flux, probe_lo, probe_hi);
  if (t >= 0.95 * t_star) {
    std::ostringstream os;
    os << "smooth_characteristics: t=" << t << " is beyond 0.95*T_blowup=" << 0.95 * t_star;
    throw PostShock(os.str());
  }

  // g(xi) = xi + F'(u0(xi)) t - x is strictly increasing pre-shock.
  double speed_max = 0.0;
  const double h = (probe_hi - probe_lo) / kProbePoints;
  for (int i = 0; i <= kProbePoints; ++i) {
    speed_max = std::max(speed_max, std::abs(flux.df(u0(probe_lo + i * h))));
  }
  double lo = x - speed_max * std::abs(t) - 1.0;
  double hi = x + speed_max * std::abs(t) + 1.0;
  const auto g = [&](double xi) { return xi + flux.df(u0(xi)) * t - x; };
  double glo = g(lo), ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0) {
    throw InvalidDomain("smooth_characteristics: bisection bracket failed");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kBisectMaxIter; ++it) {
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= kBisectTol || 0.5 * (hi - lo) < kBisectTol) break;
    if ((glo <= 0.0) == (gm <= 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return u0(mid);
}

}  // namespace stochscl::oracle
