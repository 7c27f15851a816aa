#include "stochscl/solver/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stochscl/calculus/mollifier.hpp"
#include "stochscl/util/errors.hpp"
#include "stochscl/util/quadrature.hpp"

namespace stochscl::solver {

double cutoff(double r) {
  const double a = std::abs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double t = a - 1.0;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double mollifier_j(double z, double eps) {
  return calculus::varrho_profile(z / eps) / eps;
}

namespace {

// Quadrature of g against J_eps over [-eps, eps].
template <typename G>
double mollify_1d(G&& g, double eps) {
  return integrate_gl5([&](double z) { return g(z) * mollifier_j(z, eps); }, -eps, eps,
                       0.5 * eps);
}

}  // namespace

MollifiedFlux::MollifiedFlux(const core::FluxModel& flux, double eps_reg) {
  if (!(eps_reg > 0.0)) throw std::invalid_argument("MollifiedFlux: eps_reg must be positive");
  eps_ = eps_reg;
  const double cutoff_radius = std::sqrt(2.0 / eps_reg);
  support_hi_ = cutoff_radius + eps_reg;
  support_lo_ = -support_hi_;

  const auto masked = [&](double r) { return cutoff(eps_reg * r * r) * flux.f(r); };

  const double h = 0.25 * eps_reg;
  const int n_nodes =
      static_cast<int>(std::ceil((support_hi_ - support_lo_) / h)) + 1;
  std::vector<double> values(static_cast<std::size_t>(n_nodes));
  const double step = (support_hi_ - support_lo_) / (n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) {
    const double r = support_lo_ + i * step;
    values[static_cast<std::size_t>(i)] =
        mollify_1d([&](double z) { return masked(r - z); }, eps_reg);
  }
  table_ = CubicTable(support_lo_, support_hi_, std::move(values));
}

double MollifiedFlux::max_speed(double lo, double hi) const {
  lo = std::max(lo, support_lo_);
  hi = std::min(hi, support_hi_);
  if (!(hi > lo)) return 0.0;
  const int n = std::max(64, static_cast<int>((hi - lo) / (0.25 * eps_))) + 1;
  const double h = (hi - lo) / (n - 1);
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    m = std::max(m, std::abs(table_.derivative(lo + i * h)));
  }
  return m;
}

core::FluxModel MollifiedFlux::as_model(int growth_degree) const {
  auto self = std::make_shared<MollifiedFlux>(*this);
  core::FluxModel m;
  m.f = [self](double r) { return self->value(r); };
  m.df = [self](double r) { return self->derivative(r); };
  const double h = 0.5 * eps_;
  m.d2f = [self, h](double r) {
    return (self->derivative(r + h) - self->derivative(r - h)) / (2.0 * h);
  };
  m.growth_degree = growth_degree;
  return m;
}

core::FluxModel mollify_flux(const core::FluxModel& flux, double eps_reg) {
  return MollifiedFlux(flux, eps_reg).as_model(flux.growth_degree);
}

MollifiedSigma::MollifiedSigma(const core::NoiseModel& noise, double eps_reg,
                               const SigmaDomain& domain)
    : dom_(domain) {
  if (!(eps_reg > 0.0)) throw std::invalid_argument("MollifiedSigma: eps_reg must be positive");
  if (dom_.nx < 2 || dom_.nu < 2) {
    throw std::invalid_argument("MollifiedSigma: need at least 2 nodes per axis");
  }
  hx_ = (dom_.x_hi - dom_.x_lo) / (dom_.nx - 1);
  hu_ = (dom_.u_hi - dom_.u_lo) / (dom_.nu - 1);
  tab_.resize(static_cast<std::size_t>(dom_.nx) * dom_.nu);
  for (int ix = 0; ix < dom_.nx; ++ix) {
    const double x = dom_.x_lo + ix * hx_;
    for (int iu = 0; iu < dom_.nu; ++iu) {
      const double u = dom_.u_lo + iu * hu_;
      const auto inner = [&](double w) {
        return mollify_1d(
            [&](double s) {
              const double y = x - s, v = u - w;
              return cutoff(eps_reg * (y * y + v * v)) * noise.sigma(y, v);
            },
            eps_reg);
      };
      tab_[static_cast<std::size_t>(ix) * dom_.nu + iu] = mollify_1d(inner, eps_reg);
    }
  }
}

double MollifiedSigma::value_at_node(int ix, double u) const {
  const double* row = tab_.data() + static_cast<std::size_t>(ix) * dom_.nu;
  double s = (u - dom_.u_lo) / hu_;
  if (s <= 0.0) return row[0] + s * (row[1] - row[0]);
  if (s >= static_cast<double>(dom_.nu - 1)) {
    const double e = s - static_cast<double>(dom_.nu - 1);
    return row[dom_.nu - 1] + e * (row[dom_.nu - 1] - row[dom_.nu - 2]);
  }
  int i = static_cast<int>(s);
  if (i > dom_.nu - 2) i = dom_.nu - 2;
  const double t = s - i;
  return row[i] + t * (row[i + 1] - row[i]);
}

double MollifiedSigma::value(double x, double u) const {
  double s = (x - dom_.x_lo) / hx_;
  if (s <= 0.0) return value_at_node(0, u);
  if (s >= static_cast<double>(dom_.nx - 1)) return value_at_node(dom_.nx - 1, u);
  int i = static_cast<int>(s);
  if (i > dom_.nx - 2) i = dom_.nx - 2;
  const double t = s - i;
  return (1.0 - t) * value_at_node(i, u) + t * value_at_node(i + 1, u);
}

core::NoiseModel MollifiedSigma::as_model(const core::NoiseModel& original,
                                          double eps_reg) const {
  auto self = std::make_shared<MollifiedSigma>(*this);
  core::NoiseModel m;
  m.sigma = [self](double x, double u) { return self->value(x, u); };
  // Mollification is an average of translates, so A2/A3 survive with the
  // constants inflated by the mollification offset.
  m.lipschitz_c = original.lipschitz_c * (1.0 + eps_reg);
  auto g = original.envelope_g;
  m.envelope_g = [g, eps_reg](double x) {
    double best = 0.0;
    for (int i = -2; i <= 2; ++i) {
      best = std::max(best, g(x + 0.5 * i * eps_reg));
    }
    return best * (1.0 + 2.0 * eps_reg);
  };
  return m;
}

core::NoiseModel mollify_sigma(const core::NoiseModel& noise, double eps_reg,
                               const SigmaDomain& domain) {
  return MollifiedSigma(noise, eps_reg, domain).as_model(noise, eps_reg);
}

std::vector<double> regularize_initial(const std::function<double(double)>& u0, double eps_reg,
                                       const core::Grid1D& grid) {
  if (!(eps_reg > 0.0)) throw std::invalid_argument("regularize_initial: eps_reg must be > 0");

  // Probe the support on a refined grid; the mollified data must stay clear of
  // the periodic wrap.
  const int probes = 4 * grid.n_cells;
  const double layer = eps_reg + grid.dx;
  const double ph = grid.width() / probes;
  for (int i = 0; i <= probes; ++i) {
    const double x = grid.x_min + i * ph;
    if (u0(x) != 0.0) {
      if (x < grid.x_min + layer || x > grid.x_max - layer) {
        std::ostringstream os;
        os << "regularize_initial: u0 support at x=" << x
           << " touches the box boundary layer (width " << layer << ")";
        throw SupportViolation(os.str());
      }
    }
  }

  std::vector<double> values(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xj = grid.center(j);
    values[static_cast<std::size_t>(j)] = mollify_1d(
        [&](double z) {
          const double y = xj - z;
          return cutoff(eps_reg * y * y) * u0(y);
        },
        eps_reg);
  }
  return values;
}

}  // namespace stochscl::solver
