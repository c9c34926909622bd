#include "varfrac/collocation_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "varfrac/errors.hpp"
#include "varfrac/quadrature.hpp"

namespace varfrac {

namespace {

constexpr int kProblemGridPoints = 1000;

// y^(i)(0)-terms of a Caputo derivative of the given order:
// sum_{i=ceil(order)}^{n-1} y0^i t^(i-order) / Gamma(i+1-order).
double initial_value_terms(const std::vector<double>& y0, double order, double t) {
  double acc = 0.0;
  const int n = static_cast<int>(y0.size());
  for (int i = std::max(0, snapped_ceil(order)); i < n; ++i) {
    const double power = i - order;
    if (std::abs(power) <= kIntegerOrderTolerance) {
      acc += y0[static_cast<std::size_t>(i)];
    } else {
      acc += y0[static_cast<std::size_t>(i)] * std::pow(t, power) / gamma(power + 1.0);
    }
  }
  return acc;
}

// An affine functional A -> A.dot(weights) + offset.
struct Affine {
  Vector weights;
  double offset = 0.0;

  double operator()(const Vector& a) const { return a.dot(weights) + offset; }
};

Affine caputo_functional(const BasisSpec& spec, const std::vector<double>& y0, int n, double order,
                         double t) {
  return {apply_rl_to_basis_factored(spec, n - order, t), initial_value_terms(y0, order, t)};
}

struct CollocationRow {
  double t = 0.0;
  Affine lhs;
  Affine value;
  std::vector<Affine> terms;
  std::vector<Affine> deformed;
};

// All operational-matrix products at the collocation points. None of them
// depend on A, so they are built once and reused by every Newton iteration.
class CollocationSystem {
 public:
  CollocationSystem(const FdeProblem& problem, const BasisSpec& spec) : problem_(problem) {
    const int n = problem.n();
    const auto& y0 = problem.initial_values();
    for (double t : collocation_points(spec.degree())) {
      CollocationRow row;
      row.t = t;
      row.lhs = caputo_functional(spec, y0, n, problem.alpha()(t), t);
      row.value = caputo_functional(spec, y0, n, 0.0, t);
      for (const auto& order : problem.term_orders()) {
        row.terms.push_back(caputo_functional(spec, y0, n, order(t), t));
      }
      for (const auto& arg : problem.deformed_args()) {
        row.deformed.push_back(caputo_functional(spec, y0, n, 0.0, arg.map(t)));
      }
      rows_.push_back(std::move(row));
    }
  }

  Vector residual(const Vector& a) const {
    Vector r(static_cast<Eigen::Index>(rows_.size()));
    std::vector<double> slots;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const auto& row = rows_[j];
      fill_slots(row, a, slots);
      r(static_cast<Eigen::Index>(j)) = row.lhs(a) - rhs(row, slots);
    }
    return r;
  }

  // Every argument of F is affine in A, so row j of the Jacobian is
  // lhs - sum_s dF/dx_s * w_s. Only the scalar partials are differenced.
  Matrix jacobian(const Vector& a) const {
    const double h_rel = std::cbrt(std::numeric_limits<double>::epsilon());
    Matrix jac(static_cast<Eigen::Index>(rows_.size()), a.size());
    std::vector<double> slots;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const auto& row = rows_[j];
      fill_slots(row, a, slots);
      Vector line = row.lhs.weights;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const double x = slots[s];
        const double h = h_rel * std::max(1.0, std::abs(x));
        line -= partial(row, slots, s, x, h) * slot_weights(row, s);
      }
      jac.row(static_cast<Eigen::Index>(j)) = line.transpose();
    }
    return jac;
  }

 private:
  // Slot layout: y, term derivatives, deformed values.
  static void fill_slots(const CollocationRow& row, const Vector& a, std::vector<double>& slots) {
    slots.clear();
    slots.push_back(row.value(a));
    for (const auto& term : row.terms) slots.push_back(term(a));
    for (const auto& d : row.deformed) slots.push_back(d(a));
  }

  static const Vector& slot_weights(const CollocationRow& row, std::size_t s) {
    if (s == 0) return row.value.weights;
    if (s <= row.terms.size()) return row.terms[s - 1].weights;
    return row.deformed[s - 1 - row.terms.size()].weights;
  }

  double rhs(const CollocationRow& row, const std::vector<double>& slots) const {
    const std::size_t k = row.terms.size();
    const RhsArgs args{row.t, slots[0], std::span<const double>(slots.data() + 1, k),
                       std::span<const double>(slots.data() + 1 + k, row.deformed.size())};
    try {
      return problem_.rhs()(args);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "right-hand side failed at t = " << row.t << ": " << e.what();
      throw Error(msg.str());
    }
  }

  // Central difference, falling back to one-sided ones at the edge of F's domain.
  double partial(const CollocationRow& row, std::vector<double>& slots, std::size_t s, double x,
                 double h) const {
    auto at = [&](double v) {
      slots[s] = v;
      const double f = rhs(row, slots);
      slots[s] = x;
      return f;
    };
    const double up = x + h;
    const double down = x - h;
    try {
      return (at(up) - at(down)) / (up - down);
    } catch (const Error&) {
    }
    const double centre = at(x);
    try {
      return (at(up) - centre) / (up - x);
    } catch (const Error&) {
    }
    return (centre - at(down)) / (x - down);
  }

 private:
  const FdeProblem& problem_;
  std::vector<CollocationRow> rows_;
};

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

FdeProblem::FdeProblem(OrderFunction alpha, std::vector<OrderFunction> term_orders, RhsFn rhs,
                       std::vector<double> initial_values, std::vector<DeformedArg> deformed_args)
    : alpha_(std::move(alpha)),
      term_orders_(std::move(term_orders)),
      rhs_(std::move(rhs)),
      initial_values_(std::move(initial_values)),
      deformed_args_(std::move(deformed_args)) {
  if (!rhs_) throw SchemaError("rhs", "right-hand side is empty");
  if (!(alpha_.min_sampled() > 0.0)) {
    throw SchemaError("alpha", "order must be strictly positive on (0, 1]");
  }
  if (alpha_.n_bound() < 1 || snapped_ceil(alpha_.max_sampled()) != alpha_.n_bound()) {
    throw SchemaError("n", "declared bound " + std::to_string(alpha_.n_bound()) +
                               " is not the smallest integer n with alpha(t) <= n");
  }
  if (static_cast<int>(initial_values_.size()) != alpha_.n_bound()) {
    throw SchemaError("initial_values", "expected " + std::to_string(alpha_.n_bound()) +
                                            " values, got " +
                                            std::to_string(initial_values_.size()));
  }
  for (double v : initial_values_) {
    if (!std::isfinite(v)) throw SchemaError("initial_values", "values must be finite");
  }
  for (int k = 1; k <= kProblemGridPoints; ++k) {
    const double t = static_cast<double>(k) / kProblemGridPoints;
    double previous = 0.0;
    for (std::size_t j = 0; j < term_orders_.size(); ++j) {
      const double a = term_orders_[j](t);
      if (!(a > previous)) {
        std::ostringstream msg;
        msg << "orders must satisfy 0 < alpha_1(t) < ... < alpha_k(t); violated by entry "
            << j + 1 << " at t = " << t;
        throw SchemaError("term_orders", msg.str());
      }
      previous = a;
    }
    if (!term_orders_.empty() && !(previous < alpha_(t))) {
      std::ostringstream msg;
      msg << "largest term order must stay below alpha(t); violated at t = " << t;
      throw SchemaError("term_orders", msg.str());
    }
    for (const auto& arg : deformed_args_) {
      double theta = 0.0;
      try {
        theta = arg.map(t);
      } catch (const Error& e) {
        throw SchemaError("deformed_args", "'" + arg.name + "' failed: " + e.what());
      }
      if (!(theta >= 0.0 && theta <= 1.0)) {
        std::ostringstream msg;
        msg << "'" << arg.name << "' maps t = " << t << " to " << theta << ", outside [0, 1]";
        throw SchemaError("deformed_args", msg.str());
      }
    }
  }
}

std::vector<double> collocation_points(int degree) {
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) {
    points.push_back(static_cast<double>(j + 1) / static_cast<double>(degree + 2));
  }
  return points;
}

SpectralSolution::SpectralSolution(Vector coefficients, BasisPtr basis, ProblemPtr problem,
                                   ConvergenceInfo info)
    : coefficients_(std::move(coefficients)),
      basis_(std::move(basis)),
      problem_(std::move(problem)),
      info_(std::move(info)) {
  if (coefficients_.size() != basis_->size()) {
    throw DomainError("coefficient vector length does not match the basis");
  }
}

double eval_caputo_of_solution(const SpectralSolution& sol, double order, double t) {
  const int n = sol.problem().n();
  if (order > n + kIntegerOrderTolerance) {
    throw DomainError("eval_caputo_of_solution: order exceeds n = " + std::to_string(n));
  }
  if (order < 0.0) throw DomainError("eval_caputo_of_solution: negative order");
  order = std::min(order, static_cast<double>(n));
  return caputo_functional(sol.basis(), sol.problem().initial_values(), n, order, t)(
      sol.coefficients());
}

double eval_caputo_of_solution(const SpectralSolution& sol, const OrderFunction& order, double t) {
  return eval_caputo_of_solution(sol, order(t), t);
}

double eval_solution(const SpectralSolution& sol, double t) {
  return eval_caputo_of_solution(sol, 0.0, t);
}

Vector assemble_residual(const FdeProblem& problem, const BasisSpec& spec, const Vector& a) {
  if (a.size() != spec.size()) throw DomainError("assemble_residual: coefficient length mismatch");
  return CollocationSystem(problem, spec).residual(a);
}

SpectralSolution solve(ProblemPtr problem, int degree, const SolveOptions& options) {
  auto basis = make_basis(degree);
  const CollocationSystem system(*problem, *basis);

  Vector a = Vector::Zero(basis->size());
  Vector r = system.residual(a);
  double norm = inf_norm(r);
  ConvergenceInfo info;
  for (int iteration = 1;; ++iteration) {
    if (!std::isfinite(norm)) {
      throw SolverError("residual became non-finite", iteration - 1, norm);
    }
    if (norm <= options.tolerance) {
      info.criterion = "residual";
      break;
    }
    if (iteration > options.max_iterations) {
      throw SolverError("Newton iteration did not converge in " +
                            std::to_string(options.max_iterations) +
                            " iterations; final residual " + std::to_string(norm),
                        options.max_iterations, norm);
    }
    const Matrix jac = system.jacobian(a);
    const Eigen::FullPivLU<Matrix> lu(jac);
    if (!lu.isInvertible()) {
      throw SolverError("singular Jacobian at iteration " + std::to_string(iteration), iteration,
                        norm);
    }
    const Vector step = lu.solve(-r);

    // Backtracking keeps the iteration from diverging on strongly nonlinear
    // right-hand sides; full Newton steps are taken whenever they help.
    double lambda = 1.0;
    Vector trial = a + step;
    Vector trial_r = system.residual(trial);
    double trial_norm = inf_norm(trial_r);
    while (!(trial_norm < norm) && lambda > 1.0 / 1024.0) {
      lambda *= 0.5;
      trial = a + lambda * step;
      trial_r = system.residual(trial);
      trial_norm = inf_norm(trial_r);
    }
    if (!(trial_norm < norm)) {
      // No decrease along the Newton direction: accept the full step and let
      // the step criterion decide whether this is the round-off floor.
      trial = a + step;
      trial_r = system.residual(trial);
      trial_norm = inf_norm(trial_r);
    }
    a = std::move(trial);
    r = std::move(trial_r);
    norm = trial_norm;
    info.iterations = iteration;
    if (inf_norm(lambda * step) <= options.step_tolerance * std::max(1.0, inf_norm(a))) {
      info.criterion = norm <= options.tolerance ? "residual" : "step";
      break;
    }
  }
  info.residual_norm = norm;
  return SpectralSolution(std::move(a), std::move(basis), std::move(problem), std::move(info));
}

double theorem1_bound(int degree, double kappa) {
  if (kappa < 0.0) throw DomainError("theorem1_bound: kappa must be non-negative");
  if (degree < 0) throw DomainError("theorem1_bound: degree must be non-negative");
  return kappa / (std::ldexp(1.0, 2 * degree + 1) * factorial(static_cast<unsigned>(degree) + 1));
}

double theorem2_bound(int degree, int n, double kappa) {
  if (n < 1) throw DomainError("theorem2_bound: n must be at least 1");
  const double nn = n;
  return theorem1_bound(degree, kappa) /
         (factorial(static_cast<unsigned>(n - 1)) * std::sqrt(2.0 * nn * (2.0 * nn - 1.0)));
}

double l2_error(const SpectralSolution& sol, const std::function<double(double)>& exact) {
  auto squared = [&](double t) {
    const double d = eval_solution(sol, t) - exact(t);
    return d * d;
  };
  // The norm is wanted to 1e-12. Since d||e|| ~ dI / (2 ||e||), a rough pass
  // sets the tolerance on the integral of squares for the final one.
  const double rough = integrate(squared, 0.0, 1.0, 0.0, 1e-6, 256,
                                 OnBudgetExhausted::ReturnEstimate)
                           .value;
  const double tol = std::max(1e-24, 2e-12 * std::sqrt(rough));
  return std::sqrt(integrate(squared, 0.0, 1.0, tol, 0.0).value);
}

}  // namespace varfrac
