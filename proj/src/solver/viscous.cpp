#include "stochscl/solver/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stochscl/util/errors.hpp"

namespace stochscl::solver {

namespace {

SigmaDomain sigma_domain_for(const ViscousConfig& cfg) {
  SigmaDomain d;
  d.x_lo = cfg.grid.center(0);
  d.x_hi = cfg.grid.center(cfg.grid.n_cells - 1);
  d.nx = cfg.grid.n_cells;
  // Margin for excursions beyond the declared range; lookups extrapolate
  // linearly past it, which is harmless for A2-compliant coefficients.
  const double span = cfg.u_hi - cfg.u_lo;
  d.u_lo = cfg.u_lo - 0.5 * span - 0.5;
  d.u_hi = cfg.u_hi + 0.5 * span + 0.5;
  d.nu = 256;
  return d;
}

}  // namespace

ViscousScheme::ViscousScheme(const ViscousConfig& cfg)
    : cfg_(cfg),
      flux_(cfg.flux, cfg.effective_eps_reg()),
      sigma_(cfg.noise, cfg.effective_eps_reg(), sigma_domain_for(cfg)) {
  max_speed_ = flux_.max_speed(cfg_.u_lo, cfg_.u_hi);
}

void ViscousScheme::validate() const {
  const double dx = cfg_.grid.dx;
  double dt_max = 0.4 * dx * dx / (2.0 * cfg_.eps_visc);
  if (max_speed_ > 0.0) {
    dt_max = std::min(dt_max, 0.4 * dx / max_speed_);
  }
  if (cfg_.dt > dt_max) {
    std::ostringstream os;
    os << "stability: dt=" << cfg_.dt << " exceeds the CFL limit " << dt_max
       << " (dx=" << dx << ", max |F_eps'|=" << max_speed_ << ", eps_visc=" << cfg_.eps_visc
       << ")";
    throw ConfigError(os.str());
  }
  if (cfg_.eps_visc < 0.5 * dx * max_speed_) {
    std::ostringstream os;
    os << "stability: eps_visc=" << cfg_.eps_visc
       << " is below the scheme's numerical viscosity floor 0.5*dx*max|F_eps'|="
       << 0.5 * dx * max_speed_ << "; refine the grid or raise eps_visc";
    throw ConfigError(os.str());
  }
}

void ViscousScheme::step_inplace(const std::vector<double>& u, double dW,
                                 std::vector<double>& out) const {
  const int n = cfg_.grid.n_cells;
  const double dx = cfg_.grid.dx;
  const double lam = cfg_.dt / dx;
  const double mu = cfg_.eps_visc * cfg_.dt / (dx * dx);

  // Local Lax-Friedrichs interface flux H_{j+1/2}; periodic wrap.
  double f_prev = flux_.value(u[0]);
  double a_prev = std::abs(flux_.derivative(u[0]));
  // H_{j-1/2} for j=0 couples cells n-1 and 0.
  const double f_last = flux_.value(u[n - 1]);
  const double a_last = std::abs(flux_.derivative(u[n - 1]));
  double h_left = 0.5 * (f_last + f_prev) - 0.5 * std::max(a_last, a_prev) * (u[0] - u[n - 1]);
  const double h_wrap = h_left;

  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1 == n) ? 0 : j + 1;
    double h_right;
    if (jp == 0) {
      h_right = h_wrap;
    } else {
      const double f_next = flux_.value(u[jp]);
      const double a_next = std::abs(flux_.derivative(u[jp]));
      h_right = 0.5 * (f_prev + f_next) - 0.5 * std::max(a_prev, a_next) * (u[jp] - u[j]);
      f_prev = f_next;
      a_prev = a_next;
    }
    const int jm = (j == 0) ? n - 1 : j - 1;
    out[j] = u[j] - lam * (h_right - h_left) + mu * (u[jp] - 2.0 * u[j] + u[jm]) +
             sigma_.value_at_node(j, u[j]) * dW;
    h_left = h_right;
  }
}

std::vector<double> ViscousScheme::step(const std::vector<double>& u, double dW) const {
  std::vector<double> out(u.size());
  step_inplace(u, dW, out);
  return out;
}

Trajectory ViscousScheme::solve(const core::WienerPath& path,
                                const std::function<double(double)>& u0, int stride) const {
  if (path.dt != cfg_.dt) {
    throw EnsembleMismatch("solve: path.dt does not match the configured dt");
  }
  const long n_steps = std::llround(cfg_.t_end / cfg_.dt);
  if (path.n_steps() < n_steps) {
    throw EnsembleMismatch("solve: Wiener path is shorter than t_end/dt steps");
  }
  if (stride < 1 || n_steps % stride != 0) {
    throw ConfigError("solve: snapshot stride must divide the step count");
  }

  Trajectory traj;
  traj.eps_visc = cfg_.eps_visc;
  traj.eps_reg = cfg_.effective_eps_reg();
  traj.grid = cfg_.grid;
  traj.dt = cfg_.dt;
  traj.stride = stride;
  traj.path = path;
  traj.n_snaps = static_cast<int>(n_steps / stride) + 1;
  traj.data.resize(static_cast<std::size_t>(traj.n_snaps) * cfg_.grid.n_cells);

  std::vector<double> u = regularize_initial(u0, cfg_.effective_eps_reg(), cfg_.grid);
  std::vector<double> next(u.size());
  std::copy(u.begin(), u.end(), traj.data.begin());

  int snap = 1;
  for (long k = 0; k < n_steps; ++k) {
    step_inplace(u, path.increments[static_cast<std::size_t>(k)], next);
    u.swap(next);
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    if (!(umax <= cfg_.blowup_guard)) {
      std::ostringstream os;
      os << "solve: |u| reached " << umax << " at step " << (k + 1) << " (guard "
         << cfg_.blowup_guard << ")";
      throw NumericalBlowup(os.str(), k + 1);
    }
    if ((k + 1) % stride == 0) {
      std::copy(u.begin(), u.end(),
                traj.data.begin() + static_cast<std::size_t>(snap) * cfg_.grid.n_cells);
      ++snap;
    }
  }
  return traj;
}

std::vector<double> step(const std::vector<double>& u, double dW, const ViscousConfig& cfg) {
  ViscousScheme scheme(cfg);
  scheme.validate();
  return scheme.step(u, dW);
}

Trajectory solve(const ViscousConfig& cfg, const core::WienerPath& path,
                 const std::function<double(double)>& u0, int stride) {
  ViscousScheme scheme(cfg);
  scheme.validate();
  return scheme.solve(path, u0, stride);
}

std::vector<double> moments(const Trajectory& traj, int p) {
  if (p < 1) throw std::invalid_argument("moments: p must be a positive integer");
  std::vector<double> out(static_cast<std::size_t>(traj.n_snaps));
  const int n = traj.grid.n_cells;
  for (int s = 0; s < traj.n_snaps; ++s) {
    const double* row = traj.row(s);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += std::pow(std::abs(row[j]), p);
    }
    out[static_cast<std::size_t>(s)] = acc * traj.grid.dx;
  }
  return out;
}

double gradient_energy(const Trajectory& traj, const std::function<double(double)>& phi_d2) {
  const int n = traj.grid.n_cells;
  const double dx = traj.grid.dx;
  double acc = 0.0;
  for (int s = 0; s + 1 < traj.n_snaps; ++s) {
    const double* row = traj.row(s);
    double slice = 0.0;
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1 == n) ? 0 : j + 1;
      const double g = (row[jp] - row[j]) / dx;
      slice += phi_d2(row[j]) * g * g;
    }
    acc += slice;
  }
  return traj.eps_visc * acc * dx * traj.snapshot_dt();
}

}  // namespace stochscl::solver
