#ifndef STOCHSCL_UTIL_INTERP_HPP
#define STOCHSCL_UTIL_INTERP_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace stochscl {

/// Uniform-grid table with local cubic (Catmull-Rom) interpolation.
/// Values outside [x0, x1] are clamped to the boundary value; callers that
/// need a different tail behaviour handle it before the lookup.
class CubicTable {
 public:
  CubicTable() = default;
  CubicTable(double x0, double x1, std::vector<double> values)
      : x0_(x0), x1_(x1), v_(std::move(values)) {
    n_ = v_.size();
    h_ = (n_ > 1) ? (x1_ - x0_) / static_cast<double>(n_ - 1) : 1.0;
  }

  double x_min() const { return x0_; }
  double x_max() const { return x1_; }
  std::size_t size() const { return n_; }

  double operator()(double x) const {
    double t;
    std::size_t i = locate(x, t);
    const double vm1 = v_[i == 0 ? 0 : i - 1];
    const double v0 = v_[i];
    const double v1 = v_[i + 1 < n_ ? i + 1 : n_ - 1];
    const double v2 = v_[i + 2 < n_ ? i + 2 : n_ - 1];
    const double a0 = v0;
    const double a1 = 0.5 * (v1 - vm1);
    const double a2 = vm1 - 2.5 * v0 + 2.0 * v1 - 0.5 * v2;
    const double a3 = 0.5 * (v2 - vm1) + 1.5 * (v0 - v1);
    return a0 + t * (a1 + t * (a2 + t * a3));
  }

  /// Derivative of the interpolant.
  double derivative(double x) const {
    double t;
    std::size_t i = locate(x, t);
    const double vm1 = v_[i == 0 ? 0 : i - 1];
    const double v0 = v_[i];
    const double v1 = v_[i + 1 < n_ ? i + 1 : n_ - 1];
    const double v2 = v_[i + 2 < n_ ? i + 2 : n_ - 1];
    const double a1 = 0.5 * (v1 - vm1);
    const double a2 = vm1 - 2.5 * v0 + 2.0 * v1 - 0.5 * v2;
    const double a3 = 0.5 * (v2 - vm1) + 1.5 * (v0 - v1);
    return (a1 + t * (2.0 * a2 + t * 3.0 * a3)) / h_;
  }

 private:
  std::size_t locate(double x, double& t) const {
    if (x <= x0_) {
      t = 0.0;
      return 0;
    }
    if (x >= x1_) {
      t = 1.0;
      return n_ - 2;
    }
    double s = (x - x0_) / h_;
    std::size_t i = static_cast<std::size_t>(s);
    if (i > n_ - 2) i = n_ - 2;
    t = s - static_cast<double>(i);
    return i;
  }

  double x0_ = 0.0, x1_ = 1.0, h_ = 1.0;
  std::size_t n_ = 0;
  std::vector<double> v_;
};

/// Piecewise-linear lookup on a uniform grid, with linear extrapolation from
/// the edge slope outside the tabulated range.
class LinearTable {
 public:
  LinearTable() = default;
  LinearTable(double x0, double x1, std::vector<double> values)
      : x0_(x0), x1_(x1), v_(std::move(values)) {
    n_ = v_.size();
    h_ = (n_ > 1) ? (x1_ - x0_) / static_cast<double>(n_ - 1) : 1.0;
  }

  double x_min() const { return x0_; }
  double x_max() const { return x1_; }

  double operator()(double x) const {
    double s = (x - x0_) / h_;
    if (s <= 0.0) return v_[0] + s * (v_[1] - v_[0]);
    if (s >= static_cast<double>(n_ - 1)) {
      double e = s - static_cast<double>(n_ - 1);
      return v_[n_ - 1] + e * (v_[n_ - 1] - v_[n_ - 2]);
    }
    std::size_t i = static_cast<std::size_t>(s);
    if (i > n_ - 2) i = n_ - 2;
    double t = s - static_cast<double>(i);
    return v_[i] + t * (v_[i + 1] - v_[i]);
  }

 private:
  double x0_ = 0.0, x1_ = 1.0, h_ = 1.0;
  std::size_t n_ = 0;
  std::vector<double> v_;
};

}  // namespace stochscl

#endif
