#pragma once

#include <functional>
#include <string>

#include "varfrac/bernoulli_basis.hpp"

namespace varfrac {

/// Integers closer than this are treated as exact when branching on ceil(order).
inline constexpr double kIntegerOrderTolerance = 1e-12;

/// ceil(x), snapping values within kIntegerOrderTolerance of an integer.
int snapped_ceil(double x);

/// A time-dependent order alpha(t) with declared integer bound n.
///
/// Construction samples alpha on t = k / 10^4, k = 1..10^4, and rejects the
/// function unless 0 <= alpha(t) <= n everywhere on the grid. `infer` picks
/// the smallest admissible n from the same samples.
class OrderFunction {
 public:
  using Fn = std::function<double(double)>;

  OrderFunction(Fn fn, int n_bound, std::string label = {});

  static OrderFunction constant(double value, std::string label = {});
  static OrderFunction infer(Fn fn, std::string label = {});

  double operator()(double t) const { return fn_(t); }
  int n_bound() const noexcept { return n_bound_; }
  const std::string& label() const noexcept { return label_; }
  /// Largest sampled value.
  double max_sampled() const noexcept { return max_sampled_; }
  /// Smallest sampled value.
  double min_sampled() const noexcept { return min_sampled_; }

 private:
  Fn fn_;
  int n_bound_;
  std::string label_;
  double max_sampled_ = 0.0;
  double min_sampled_ = 0.0;
};

/// Left Riemann-Liouville integral of t^nu:
/// Gamma(nu+1) / Gamma(nu+1+alpha(t)) * t^(nu+alpha(t)).
double rl_integral_power(const OrderFunction& alpha, double nu, double t);
double rl_integral_power(double order, double nu, double t);

/// Diagonal of S_t: entry k is Gamma(k+1) / Gamma(k+1+order) * t^order.
Vector s_diagonal(double order, double t, int degree);
Vector s_diagonal(const OrderFunction& alpha, double t, int degree);

/// Operational matrix of fractional integration at a fixed t, P = Q S Q^-1,
/// so that I^order B(t) = P B(t).
struct OperationalMatrix {
  Matrix p;
  double order_at_t = 0.0;
  double t = 0.0;
};

OperationalMatrix operational_matrix(const BasisSpec& spec, double order, double t);
OperationalMatrix operational_matrix(const BasisSpec& spec, const OrderFunction& alpha, double t);

/// I^order B(t), computed as P B(t).
Vector apply_rl_to_basis(const BasisSpec& spec, double order, double t);
Vector apply_rl_to_basis(const BasisSpec& spec, const OrderFunction& alpha, double t);

/// I^order B(t) as Q (S T(t)). Equal to P B(t) in exact arithmetic but never
/// forms Q^-1 B(t) = T(t) numerically, which loses several digits at M ~ 10.
Vector apply_rl_to_basis_factored(const BasisSpec& spec, double order, double t);

/// Callable returning the k-th classical derivative of a function at s.
using DerivativeFn = std::function<double(int k, double s)>;

/// Caputo derivative of order alpha(t) by direct quadrature of
///   D^alpha f(t) = 1 / Gamma(g) * int_0^t (t-s)^(g-1) f^(n)(s) ds,  g = n - alpha.
///
/// [0, t/2] is integrated in s. The rest is cut into panels w = t - s in
/// [t 2^-(j+1), t 2^-j] on which the kernel is smooth, down to w ~ 1e-15 t;
/// the remaining sliver uses u = w^g, which removes the singularity.
/// When alpha is within kIntegerOrderTolerance of an integer n the result is f^(n)(t).
double caputo_oracle(const DerivativeFn& f, double order, double t, double abs_tol = 1e-11);
double caputo_oracle(const DerivativeFn& f, const OrderFunction& alpha, double t,
                     double abs_tol = 1e-11);

}  // namespace varfrac
