#include "varfrac/fractional_operators.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "varfrac/errors.hpp"
#include "varfrac/quadrature.hpp"

namespace varfrac {

namespace {

constexpr int kOrderGridPoints = 10000;

}  // namespace

int snapped_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= kIntegerOrderTolerance) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(x));
}

OrderFunction::OrderFunction(Fn fn, int n_bound, std::string label)
    : fn_(std::move(fn)), n_bound_(n_bound), label_(std::move(label)) {
  if (!fn_) throw DomainError("order function is empty");
  if (n_bound_ < 0) throw DomainError("order bound must be non-negative");
  max_sampled_ = -std::numeric_limits<double>::infinity();
  min_sampled_ = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kOrderGridPoints; ++k) {
    const double t = static_cast<double>(k) / kOrderGridPoints;
    const double a = fn_(t);
    if (!std::isfinite(a) || a < 0.0 || a > n_bound_ + kIntegerOrderTolerance) {
      throw DomainError("order function " + (label_.empty() ? std::string("alpha") : label_) +
                        " leaves [0, " + std::to_string(n_bound_) + "] at t = " +
                        std::to_string(t) + " (value " + std::to_string(a) + ")");
    }
    max_sampled_ = std::max(max_sampled_, a);
    min_sampled_ = std::min(min_sampled_, a);
  }
}

OrderFunction OrderFunction::constant(double value, std::string label) {
  if (label.empty()) label = std::to_string(value);
  return OrderFunction([value](double) { return value; }, std::max(0, snapped_ceil(value)),
                       std::move(label));
}

OrderFunction OrderFunction::infer(Fn fn, std::string label) {
  double hi = 0.0;
  for (int k = 1; k <= kOrderGridPoints; ++k) {
    const double a = fn(static_cast<double>(k) / kOrderGridPoints);
    if (std::isfinite(a)) hi = std::max(hi, a);
  }
  return OrderFunction(std::move(fn), std::max(0, snapped_ceil(hi)), std::move(label));
}

double rl_integral_power(double order, double nu, double t) {
  if (!(nu > -1.0)) throw DomainError("rl_integral_power: nu must exceed -1");
  if (order < 0.0) throw DomainError("rl_integral_power: order must be non-negative");
  return gamma(nu + 1.0) / gamma(nu + 1.0 + order) * std::pow(t, nu + order);
}

double rl_integral_power(const OrderFunction& alpha, double nu, double t) {
  return rl_integral_power(alpha(t), nu, t);
}

Vector s_diagonal(double order, double t, int degree) {
  if (order < 0.0) throw DomainError("s_diagonal: order must be non-negative");
  if (t < 0.0 || t > 1.0) throw DomainError("s_diagonal: t must lie in [0, 1]");
  const double scale = std::pow(t, order);
  Vector s(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    s(k) = gamma(k + 1.0) / gamma(k + 1.0 + order) * scale;
  }
  return s;
}

Vector s_diagonal(const OrderFunction& alpha, double t, int degree) {
  return s_diagonal(alpha(t), t, degree);
}

OperationalMatrix operational_matrix(const BasisSpec& spec, double order, double t) {
  const Vector s = s_diagonal(order, t, spec.degree());
  OperationalMatrix out;
  out.p = spec.q() * s.asDiagonal() * spec.q_inverse();
  out.order_at_t = order;
  out.t = t;
  return out;
}

OperationalMatrix operational_matrix(const BasisSpec& spec, const OrderFunction& alpha, double t) {
  return operational_matrix(spec, alpha(t), t);
}

Vector apply_rl_to_basis(const BasisSpec& spec, double order, double t) {
  return operational_matrix(spec, order, t).p * basis_vector(spec, t);
}

Vector apply_rl_to_basis(const BasisSpec& spec, const OrderFunction& alpha, double t) {
  return apply_rl_to_basis(spec, alpha(t), t);
}

Vector apply_rl_to_basis_factored(const BasisSpec& spec, double order, double t) {
  const Vector st = s_diagonal(order, t, spec.degree()).cwiseProduct(taylor_vector(spec.degree(), t));
  return spec.q() * st;
}

double caputo_oracle(const DerivativeFn& f, double order, double t, double abs_tol) {
  if (order < 0.0) throw DomainError("caputo_oracle: order must be non-negative");
  if (!(t > 0.0) || t > 1.0) throw DomainError("caputo_oracle: t must lie in (0, 1]");
  const int n = snapped_ceil(order);
  const double gap = n - order;
  if (gap <= kIntegerOrderTolerance) return f(n, t);

  constexpr int kPanels = 50;
  const double tol = abs_tol / (kPanels + 2);
  const double kernel_power = gap - 1.0;

  double sum = integrate([&](double s) { return std::pow(t - s, kernel_power) * f(n, s); }, 0.0,
                         0.5 * t, tol, 1e-13)
                   .value;
  double w_hi = 0.5 * t;
  for (int j = 1; j < kPanels; ++j) {
    const double w_lo = 0.5 * w_hi;
    sum += integrate([&](double w) { return std::pow(w, kernel_power) * f(n, t - w); }, w_lo, w_hi,
                     tol, 1e-13)
               .value;
    w_hi = w_lo;
  }
  const double inv_gap = 1.0 / gap;
  sum += inv_gap *
         integrate([&](double u) { return f(n, t - std::pow(u, inv_gap)); }, 0.0,
                   std::pow(w_hi, gap), tol * gap, 1e-13)
             .value;
  return sum / gamma(gap);
}

double caputo_oracle(const DerivativeFn& f, const OrderFunction& alpha, double t, double abs_tol) {
  return caputo_oracle(f, alpha(t), t, abs_tol);
}

}  // namespace varfrac
