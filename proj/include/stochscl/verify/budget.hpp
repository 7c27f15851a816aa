#ifndef STOCHSCL_VERIFY_BUDGET_HPP
#define STOCHSCL_VERIFY_BUDGET_HPP

#include <cmath>

namespace stochscl::verify {

/// Numerical error budget for the a.s. entropy inequality at finite
/// resolution: quadrature/discretization terms plus Monte Carlo spread.
/// The constants absorb |psi| and |beta'| scales of the documented test
/// families; they are fixed here and used verbatim by the acceptance suite.
constexpr double kEntropyBudgetC1 = 4.0;   // * dx
constexpr double kEntropyBudgetC2 = 2.0;   // * dt_snapshot
constexpr double kEntropyBudgetC3 = 0.5;   // / sqrt(n_paths)

inline double entropy_error_budget(double dx, double dt_snapshot, int n_paths) {
  return kEntropyBudgetC1 * dx + kEntropyBudgetC2 * dt_snapshot +
         kEntropyBudgetC3 / std::sqrt(static_cast<double>(n_paths));
}

/// Same structure for the strong-entropy residual limit check.
constexpr double kStrongBudgetC1 = 4.0;
constexpr double kStrongBudgetC2 = 2.0;
constexpr double kStrongBudgetC3 = 0.5;

inline double strong_entropy_budget(double dx, double dt_snapshot, int n_paths) {
  return kStrongBudgetC1 * dx + kStrongBudgetC2 * dt_snapshot +
         kStrongBudgetC3 / std::sqrt(static_cast<double>(n_paths));
}

}  // namespace stochscl::verify

#endif
