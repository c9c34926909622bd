#include "varfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "varfrac/errors.hpp"

namespace varfrac {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &err);
  if (!std::isfinite(value)) {
    throw QuadratureError("integrate: non-finite integrand on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  // Boost reports the single-panel error on the reference interval [-1, 1].
  return {a, b, value, err * 0.5 * (b - a)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, std::size_t max_segments,
                           OnBudgetExhausted policy) {
  if (a == b) return {};
  if (b < a) {
    const auto r = integrate(f, b, a, abs_tol, rel_tol, max_segments, policy);
    return {-r.value, r.error_estimate, r.converged};
  }
  std::priority_queue<Segment> heap;
  heap.push(evaluate(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  const double eps = std::numeric_limits<double>::epsilon();
  bool converged = true;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= target) break;
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Stop when the worst segment is at round-off level or cannot be split.
    if (worst.error <= 50.0 * eps * std::abs(total) || mid <= worst.a || mid >= worst.b ||
        heap.size() >= max_segments) {
      if (worst.error <= 50.0 * eps * std::abs(total)) break;
      if (policy == OnBudgetExhausted::ReturnEstimate) {
        converged = false;
        break;
      }
      throw QuadratureError("integrate: tolerance not reached, error estimate " +
                            std::to_string(total_err));
    }
    heap.pop();
    const Segment left = evaluate(f, worst.a, mid);
    const Segment right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute the sum to shed accumulated cancellation in `total`.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, converged};
}

}  // namespace varfrac
