#pragma once

#include <cstddef>
#include <functional>

namespace varfrac {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

enum class OnBudgetExhausted { Throw, ReturnEstimate };

/// Globally adaptive Gauss-Kronrod (15/31-point) integration of f over [a, b].
///
/// Bisects the segment with the largest error estimate until the total
/// estimate falls below max(abs_tol, rel_tol * |I|) or every remaining error
/// is at round-off level. When the segment budget runs out it either throws
/// QuadratureError or returns the current estimate with `converged == false`.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-13,
                           std::size_t max_segments = 2000,
                           OnBudgetExhausted policy = OnBudgetExhausted::Throw);

}  // namespace varfrac
