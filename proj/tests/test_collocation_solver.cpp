#include <cmath>
#include <memory>

#include "oracle_support.hpp"
#include "test_support.hpp"
#include "varfrac/errors.hpp"
#include "varfrac/examples.hpp"
#include "varfrac/problem_file.hpp"

using namespace varfrac;
using varfrac::test::oracle_residual;
using varfrac::test::uniform;

namespace {

ProblemPtr example_problem(const std::string& id) {
  return compile(find_example(id)->file).problem;
}

double sup_error(const SpectralSolution& sol, const std::function<double(double)>& exact) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    worst = std::max(worst, std::abs(eval_solution(sol, t) - exact(t)));
  }
  return worst;
}

}  // namespace

TEST_CASE("collocation points") {
  const auto pts = collocation_points(2);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == 0.25);
  CHECK(pts[1] == 0.5);
  CHECK(pts[2] == 0.75);
  CHECK(collocation_points(0) == std::vector<double>{0.5});
}

TEST_CASE("problem validation names the field") {
  const RhsFn zero = [](const RhsArgs&) { return 0.0; };
  auto key_of = [](auto&& build) -> std::string {
    try {
      build();
    } catch (const SchemaError& e) {
      return e.key();
    }
    return "";
  };
  const auto one = OrderFunction::constant(1.0);
  CHECK(key_of([&] { FdeProblem(one, {}, RhsFn{}, {1.0}); }) == "rhs");
  CHECK(key_of([&] { FdeProblem(OrderFunction::constant(0.0), {}, zero, {}); }) == "alpha");
  CHECK(key_of([&] { FdeProblem(OrderFunction([](double) { return 0.5; }, 2), {}, zero, {0, 0}); }) ==
        "n");
  CHECK(key_of([&] { FdeProblem(one, {}, zero, {1.0, 2.0}); }) == "initial_values");
  CHECK(key_of([&] { FdeProblem(one, {}, zero, {NAN}); }) == "initial_values");
  CHECK(key_of([&] {
          FdeProblem(one, {OrderFunction::constant(0.5), OrderFunction::constant(0.4)}, zero, {1});
        }) == "term_orders");
  CHECK(key_of([&] { FdeProblem(one, {OrderFunction::constant(1.0)}, zero, {1}); }) ==
        "term_orders");
  CHECK(key_of([&] {
          FdeProblem(one, {}, zero, {1}, {DeformedArg{"yd", [](double t) { return 2 * t; }}});
        }) == "deformed_args");
  CHECK_NOTHROW(FdeProblem(one, {OrderFunction::constant(0.5)}, zero, {1},
                           {DeformedArg{"yd", [](double t) { return t * t; }}}));
}

TEST_CASE("Example 1 is solved exactly") {
  const auto sol = solve(example_problem("example1"), 1);
  CHECK(std::abs(sol.coefficients()(0) + 1.0) <= 1e-9);
  CHECK(std::abs(sol.coefficients()(1)) <= 1e-9);
  CHECK(sup_error(sol, [](double t) { return 2 - t * t / 2; }) <= 1e-9);
  CHECK(eval_solution(sol, 1.0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(eval_solution(sol, 0.0) == 2.0);
  CHECK(l2_error(sol, [](double t) { return 2 - t * t / 2; }) <= 1e-10);
}

TEST_CASE("Example 3 recovers its displayed coefficients") {
  const auto sol = solve(example_problem("example3"), 2);
  CHECK(std::abs(sol.coefficients()(0) - 2) <= 1e-8);
  CHECK(std::abs(sol.coefficients()(1) - 5) <= 1e-8);
  CHECK(std::abs(sol.coefficients()(2) - 3) <= 1e-8);
  CHECK(eval_solution(sol, 0.5) == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(sup_error(sol, [](double t) { return t * t * t + t * t; }) <= 1e-9);
}

TEST_CASE("Example 4 at M = 1") {
  const auto sol = solve(example_problem("example4"), 1);
  CHECK(std::abs(sol.coefficients()(0) + 0.620328) <= 5e-6);
  CHECK(std::abs(sol.coefficients()(1) - 0.621053) <= 5e-6);
  // y(t) = 0.310526 t^2 - 0.930854 t + 1
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(eval_solution(sol, t) - (0.310526 * t * t - 0.930854 * t + 1)) <= 5e-6);
  }
  const double l2 = l2_error(sol, [](double t) { return std::exp(-t); });
  CHECK(std::abs(l2 - 6.29e-3) <= 1e-5);
  CHECK(l2_error(sol, [&](double t) { return eval_solution(sol, t); }) <= 1e-13);
}

TEST_CASE("Example 2 at M = 2 against the first table entry") {
  const auto sol = solve(example_problem("example2"), 2);
  const double err = std::abs(eval_solution(sol, 0.2) - std::pow(0.2, 3.5));
  CHECK(err == doctest::Approx(5.69e-3).epsilon(0.2));
}

TEST_CASE("residual of the displayed coefficients") {
  const auto p1 = example_problem("example1");
  CHECK(assemble_residual(*p1, BasisSpec(1), Vector{{-1.0, 0.0}}).cwiseAbs().maxCoeff() <= 1e-10);
  const auto p3 = example_problem("example3");
  CHECK(assemble_residual(*p3, BasisSpec(2), Vector{{2.0, 5.0, 3.0}}).cwiseAbs().maxCoeff() <=
        1e-9);

  const FdeProblem zero(OrderFunction::infer([](double t) { return 1.5 - 0.3 * t; }), {},
                        [](const RhsArgs&) { return 0.0; }, {0.0, 0.0});
  const Vector r = assemble_residual(zero, BasisSpec(4), Vector::Zero(5));
  CHECK(r.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("right-hand side failures report the point") {
  auto problem = std::make_shared<FdeProblem>(
      OrderFunction::constant(1.0), std::vector<OrderFunction>{},
      [](const RhsArgs& a) -> double {
        if (a.t > 0.4) throw EvalError("boom");
        return 0.0;
      },
      std::vector<double>{1.0});
  CHECK_THROWS_WITH_AS(assemble_residual(*problem, BasisSpec(2), Vector::Zero(3)),
                       doctest::Contains("t = 0.5"), Error);
}

TEST_CASE("singular Jacobian and iteration limits") {
  // y' = 2y with M = 0 collocates at t = 1/2 where d(LHS - F)/da = 1 - 2 t = 0.
  auto degenerate = std::make_shared<FdeProblem>(
      OrderFunction::constant(1.0), std::vector<OrderFunction>{},
      [](const RhsArgs& a) { return 2.0 * a.y; }, std::vector<double>{1.0});
  try {
    solve(degenerate, 0);
    FAIL("expected a singular Jacobian");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("singular") != std::string::npos);
  }
  CHECK_NOTHROW(solve(degenerate, 1));

  SolveOptions one_step;
  one_step.max_iterations = 1;
  CHECK_THROWS_AS(solve(example_problem("example2"), 6, one_step), SolverError);
}

TEST_CASE("theorem bounds") {
  CHECK(theorem1_bound(1, 8.0) == 0.5);
  CHECK(theorem1_bound(0, 1.0) == 0.5);
  CHECK(theorem1_bound(6, 1.0) == doctest::Approx(1.0 / (8192.0 * 5040.0)).epsilon(1e-15));
  CHECK(theorem2_bound(1, 1, 1.0) == doctest::Approx(1.0 / (16 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(theorem2_bound(1, 2, 1.0) == doctest::Approx(1.0 / (16 * std::sqrt(12.0))).epsilon(1e-15));
  CHECK(theorem2_bound(2, 2, 3.0) ==
        doctest::Approx(theorem1_bound(2, 3.0) / std::sqrt(12.0)).epsilon(1e-15));
  for (int m = 0; m < 20; ++m) CHECK(theorem1_bound(m + 1, 1.0) < theorem1_bound(m, 1.0));
}

TEST_CASE("Example 5 error stays inside the factorial error bound") {
  // y = e^t has every derivative bounded by e on [0, 1].
  const auto problem = example_problem("example5");
  for (int m : {2, 4, 6}) {
    const auto sol = solve(problem, m);
    const double err = l2_error(sol, [](double t) { return std::exp(t); });
    CHECK(err <= theorem2_bound(m, 1, std::exp(1.0)) * 10.0);
  }
}

TEST_CASE("manufactured polynomial solutions are reproduced") {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = trial % 2 + 1;
    const double c0 = uniform(0.2, 0.8);
    const double c1 = uniform(0.0, 0.4);
    OrderFunction alpha = OrderFunction::infer(
        [=](double t) { return (n - 1) + c0 + c1 * t * (1 - t); });
    std::vector<double> coef{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    auto exact = [coef](double t) {
      return coef[0] + coef[1] * t + coef[2] * t * t + coef[3] * t * t * t;
    };
    // F = D^alpha(p) - y + p.
    auto rhs = [coef, alpha](const RhsArgs& a) {
      double d = 0.0;
      for (int k = 1; k <= 3; ++k) {
        const double order = alpha(a.t);
        if (k < std::ceil(order)) continue;
        d += coef[k] * std::tgamma(k + 1.0) / std::tgamma(k + 1.0 - order) * std::pow(a.t, k - order);
      }
      const double p = coef[0] + coef[1] * a.t + coef[2] * a.t * a.t + coef[3] * std::pow(a.t, 3);
      return d - a.y + p;
    };
    std::vector<double> y0{coef[0]};
    if (n == 2) y0.push_back(coef[1]);
    auto problem = std::make_shared<FdeProblem>(alpha, std::vector<OrderFunction>{}, rhs, y0);
    const auto sol = solve(problem, 3 - n + 1);
    CHECK(sup_error(sol, exact) <= 1e-8);
    CHECK(eval_solution(sol, 0.0) == coef[0]);
  }
}

TEST_CASE("Caputo derivative of the solution") {
  const auto p2 = example_problem("example2");
  const auto sol = solve(p2, 10);
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(eval_caputo_of_solution(sol, 0.0, t) == eval_solution(sol, t));
  }
  const auto y = test::polynomial_fn(test::monomial_coefficients(sol));
  CHECK(std::abs(eval_caputo_of_solution(sol, p2->alpha(), 0.4) -
                 caputo_oracle(y, p2->alpha(), 0.4)) <= 1e-6);
  CHECK_THROWS_AS(eval_caputo_of_solution(sol, 1.5, 0.4), DomainError);

  const auto p1 = example_problem("example1");
  const auto sol1 = solve(p1, 1);
  for (double t : collocation_points(1)) {
    // y = 2 - t^2/2: D^{2t} y = -t^{2-2t} / Gamma(3-2t) for 2t in (0, 2].
    CHECK(eval_caputo_of_solution(sol1, p1->alpha(), t) ==
          doctest::Approx(-std::pow(t, 2 - 2 * t) / std::tgamma(3 - 2 * t)).epsilon(1e-10));
  }
}

TEST_CASE("initial conditions are honoured") {
  for (const char* id : {"example1", "example2", "example3", "example4", "example5"}) {
    const auto problem = example_problem(id);
    const auto sol = solve(problem, 4);
    CHECK(eval_solution(sol, 0.0) == problem->initial_values()[0]);
    if (problem->n() == 2) {
      const double h = 1e-6;
      const double slope = (eval_solution(sol, h) - eval_solution(sol, 0.0)) / h;
      CHECK(std::abs(slope - problem->initial_values()[1]) <= 1e-5);
    }
  }
}

TEST_CASE("converged solutions satisfy the equation off the grid") {
  for (const char* id : {"example1", "example2", "example3", "example4", "example5"}) {
    const auto sol = solve(example_problem(id), 8);
    for (int i = 0; i < 10; ++i) {
      const double t = 0.05 + 0.09 * i + 0.013;
      CHECK_MESSAGE(std::abs(oracle_residual(sol, t)) <= 1e-4, id << " t=" << t);
    }
  }
}

TEST_CASE("Example 4 at M = 10 matches the exact-arithmetic collocation solution") {
  // The same linear collocation system solved with 50-digit arithmetic.
  const std::pair<double, double> reference[] = {
      {0.25, 1.48e-14}, {0.125, 1.67e-14}, {0.0625, 1.76e-14}, {0.03125, 1.46e-14},
      {0.015625, 9.61e-15}};
  const auto sol = solve(example_problem("example4"), 10);
  for (const auto& [t, err] : reference) {
    const double ours = std::abs(eval_solution(sol, t) - std::exp(-t));
    CHECK(std::abs(ours - err) <= 3e-15);
  }
}
