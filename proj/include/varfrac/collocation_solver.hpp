#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "varfrac/bernoulli_basis.hpp"
#include "varfrac/fractional_operators.hpp"

namespace varfrac {

/// Values handed to the right-hand side F at one point.
struct RhsArgs {
  double t = 0.0;
  double y = 0.0;
  /// Caputo derivatives of y of the term orders alpha_1..alpha_k, in order.
  std::span<const double> derivatives;
  /// y(theta_i(t)) for each deformed argument, in declaration order.
  std::span<const double> deformed;
};

using RhsFn = std::function<double(const RhsArgs&)>;

/// A deformed (pantograph) argument theta(t) mapping (0, 1] into [0, 1].
struct DeformedArg {
  std::string name;
  std::function<double(double)> map;
};

/// D^alpha y(t) = F(t, y, D^alpha_1 y, ..., D^alpha_k y, y(theta_1(t)), ...)
/// on 0 < t <= 1 with y^(i)(0) = y0^i for i < n.
class FdeProblem {
 public:
  /// Validates: alpha > 0 on the sampling grid with n the smallest bound,
  /// one initial value per i < n, 0 < alpha_1 < ... < alpha_k < alpha on a
  /// 10^3-point grid, and every theta mapping (0, 1] into [0, 1].
  /// Violations raise SchemaError naming the field.
  FdeProblem(OrderFunction alpha, std::vector<OrderFunction> term_orders, RhsFn rhs,
             std::vector<double> initial_values, std::vector<DeformedArg> deformed_args = {});

  const OrderFunction& alpha() const noexcept { return alpha_; }
  const std::vector<OrderFunction>& term_orders() const noexcept { return term_orders_; }
  const RhsFn& rhs() const noexcept { return rhs_; }
  const std::vector<double>& initial_values() const noexcept { return initial_values_; }
  const std::vector<DeformedArg>& deformed_args() const noexcept { return deformed_args_; }
  int n() const noexcept { return alpha_.n_bound(); }

 private:
  OrderFunction alpha_;
  std::vector<OrderFunction> term_orders_;
  RhsFn rhs_;
  std::vector<double> initial_values_;
  std::vector<DeformedArg> deformed_args_;
};

using ProblemPtr = std::shared_ptr<const FdeProblem>;

/// t_j = (j+1)/(M+2), j = 0..M.
std::vector<double> collocation_points(int degree);

struct SolveOptions {
  double tolerance = 1e-12;
  int max_iterations = 100;
  double step_tolerance = 1e-14;
};

struct ConvergenceInfo {
  int iterations = 0;
  double residual_norm = 0.0;
  /// "residual" or "step", whichever criterion stopped the iteration.
  std::string criterion;
};

/// y^(n)(t) = A^T B(t), together with the data needed to rebuild y.
class SpectralSolution {
 public:
  SpectralSolution(Vector coefficients, BasisPtr basis, ProblemPtr problem, ConvergenceInfo info);

  const Vector& coefficients() const noexcept { return coefficients_; }
  int degree() const noexcept { return basis_->degree(); }
  const BasisSpec& basis() const noexcept { return *basis_; }
  const FdeProblem& problem() const noexcept { return *problem_; }
  const ConvergenceInfo& convergence() const noexcept { return info_; }

 private:
  Vector coefficients_;
  BasisPtr basis_;
  ProblemPtr problem_;
  ConvergenceInfo info_;
};

/// y(t) = A^T P_t^n B(t) + sum_{i<n} y0^i t^i / i!.
double eval_solution(const SpectralSolution& sol, double t);

/// Caputo derivative of the reconstruction:
/// A^T P_t^(n-order) B(t) + sum_{i=ceil(order)}^{n-1} y0^i t^(i-order) / Gamma(i+1-order).
/// Integer orders give classical derivatives. Throws DomainError if order > n.
double eval_caputo_of_solution(const SpectralSolution& sol, double order, double t);
double eval_caputo_of_solution(const SpectralSolution& sol, const OrderFunction& order, double t);

/// Residual of the collocation equations, LHS - F, at every t_j.
Vector assemble_residual(const FdeProblem& problem, const BasisSpec& spec, const Vector& a);

/// Newton iteration with a forward-difference Jacobian, starting from A = 0.
/// Throws SolverError on a singular Jacobian or when max_iterations is exhausted.
SpectralSolution solve(ProblemPtr problem, int degree, const SolveOptions& options = {});

/// kappa / (2^(2M+1) (M+1)!).
double theorem1_bound(int degree, double kappa);

/// kappa / (2^(2M+1) (M+1)! (n-1)! sqrt(2n(2n-1))).
double theorem2_bound(int degree, int n, double kappa);

/// ||y_M - exact||_2 over [0, 1].
double l2_error(const SpectralSolution& sol, const std::function<double(double)>& exact);

}  // namespace varfrac
