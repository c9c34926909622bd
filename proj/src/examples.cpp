#include "varfrac/examples.hpp"

namespace varfrac {

namespace {

// Caputo order of the first example's main term and the weights of its
// three lower-order terms; g is the forcing that makes 2 - t^2/2 exact.
constexpr const char* kExample1Rhs =
    "-t^(2 - 2*t)/gamma(3 - 2*t)"
    " - t^(1/2)*t^(2 - t/3)/gamma(3 - t/3)"
    " - t^(1/3)*t^(2 - t/4)/gamma(3 - t/4)"
    " - t^(1/4)*t^(2 - t/5)/gamma(3 - t/5)"
    " + t^(1/5)*(2 - t^2/2)"
    " - t^(1/4)*d1 - t^(1/3)*d2 - t^(1/2)*d3 - t^(1/5)*y";

constexpr const char* kExample2Rhs =
    "gamma(9/2)/gamma(9/2 - (1 - 0.5*exp(-t)))*t^(7/2 - (1 - 0.5*exp(-t)))"
    " + sin(t)*t^7 - sin(t)*y^2";

constexpr const char* kExample3Rhs =
    "gamma(4)/gamma(4 - sin(t))*t^(3 - sin(t))"
    " + gamma(3)/gamma(3 - sin(t))*t^(2 - sin(t))"
    " + exp(t)*(t^15 + t^10) + t^3 + t^2"
    " - y - exp(t)*yd";

constexpr const char* kExample4Rhs = "-0.1*exp(-0.2*t) - y + 0.1*yd";

// D^a y + 3 y' - y = e^t (3 - Gamma(1-a, t) / Gamma(1-a)) with a = 0.25(1 + cos^2 t),
// solved for y' so that the first-order term is the leading one.
constexpr const char* kExample5Rhs =
    "(exp(t)*(3 - gammainc_upper(1 - 0.25*(1 + cos(t)^2), t)"
    "/gamma(1 - 0.25*(1 + cos(t)^2))) + y - d1)/3";

std::vector<BuiltinExample> make_examples() {
  std::vector<BuiltinExample> out;

  {
    BuiltinExample ex;
    ex.id = "example1";
    ex.description = "multiterm variable-order FDE, alpha(t) = 2t, exact y = 2 - t^2/2";
    ex.file.name = ex.id;
    ex.file.alpha = "2*t";
    ex.file.n = 2;
    ex.file.term_orders = {"t/5", "t/4", "t/3"};
    ex.file.rhs = kExample1Rhs;
    ex.file.initial_values = {2.0, 0.0};
    ex.file.exact = "2 - t^2/2";
    ex.file.degrees = {1};
    ex.file.output.grid = 10;
    ex.coefficients = ReferenceCoefficients{1, {-1.0, 0.0}};
    out.push_back(std::move(ex));
  }
  {
    BuiltinExample ex;
    ex.id = "example2";
    ex.description = "nonlinear FDE, alpha(t) = 1 - 0.5 exp(-t), exact y = t^(7/2)";
    ex.file.name = ex.id;
    ex.file.alpha = "1 - 0.5*exp(-t)";
    ex.file.n = 1;
    ex.file.rhs = kExample2Rhs;
    ex.file.initial_values = {0.0};
    ex.file.exact = "t^(7/2)";
    ex.file.degrees = {2, 6, 10};
    ex.file.output.points = {0.2, 0.4, 0.6, 0.8, 1.0};
    ex.tables.push_back({"reference", "Bernoulli collocation",
                         {0.2, 0.4, 0.6, 0.8, 1.0},
                         {2, 6, 10},
                         {{5.69e-3, 9.75e-6, 8.06e-7},
                          {2.34e-3, 8.02e-6, 6.34e-7},
                          {2.78e-3, 7.03e-6, 5.53e-7},
                          {2.52e-3, 5.97e-6, 4.59e-7},
                          {1.66e-2, 2.89e-5, 1.95e-6}}});
    out.push_back(std::move(ex));
  }
  {
    BuiltinExample ex;
    ex.id = "example3";
    ex.description = "FDE with deformed argument y(t^5), alpha(t) = sin(t), exact y = t^3 + t^2";
    ex.file.name = ex.id;
    ex.file.alpha = "sin(t)";
    ex.file.n = 1;
    ex.file.rhs = kExample3Rhs;
    ex.file.deformed_args = {{"yd", "t^5"}};
    ex.file.initial_values = {0.0};
    ex.file.exact = "t^3 + t^2";
    ex.file.degrees = {2};
    ex.file.output.grid = 10;
    ex.coefficients = ReferenceCoefficients{2, {2.0, 5.0, 3.0}};
    out.push_back(std::move(ex));
  }
  {
    BuiltinExample ex;
    ex.id = "example4";
    ex.description = "pantograph equation with y(0.2t), alpha = 1, exact y = exp(-t)";
    ex.file.name = ex.id;
    ex.file.alpha = "1";
    ex.file.n = 1;
    ex.file.rhs = kExample4Rhs;
    ex.file.deformed_args = {{"yd", "0.2*t"}};
    ex.file.initial_values = {1.0};
    ex.file.exact = "exp(-t)";
    ex.file.degrees = {6, 8, 10};
    ex.file.output.points = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
    ex.coefficients = ReferenceCoefficients{1, {-0.620328, 0.621053}};
    ex.l2 = ReferenceL2{1, 6.29e-3};
    const std::vector<double> pts{0.25, 0.125, 0.0625, 0.03125, 0.015625};
    ex.tables.push_back({"reference", "Bernoulli collocation", pts, {6, 8, 10},
                         {{8.61e-9, 1.37e-11, 5.56e-13},
                          {1.01e-8, 1.57e-11, 4.25e-13},
                          {9.30e-9, 1.59e-11, 2.42e-13},
                          {6.47e-9, 1.21e-11, 1.29e-13},
                          {3.83e-9, 7.58e-12, 6.72e-14}}});
    ex.tables.push_back({"reference", "modified hat functions, n = 64", pts, {64},
                         {{1.18e-9}, {5.39e-10}, {1.17e-9}, {5.34e-10}, {2.27e-9}}});
    ex.tables.push_back({"reference", "Bernoulli wavelets, k = 2, M = 6", pts, {6},
                         {{1.05e-8}, {5.79e-9}, {2.00e-8}, {3.70e-9}, {2.03e-8}}});
    out.push_back(std::move(ex));
  }
  {
    BuiltinExample ex;
    ex.id = "example5";
    ex.description = "alpha(t) = 0.25(1 + cos^2 t) with a first-order term, exact y = exp(t)";
    ex.file.name = ex.id;
    ex.file.alpha = "1";
    ex.file.n = 1;
    ex.file.term_orders = {"0.25*(1 + cos(t)^2)"};
    ex.file.rhs = kExample5Rhs;
    ex.file.initial_values = {1.0};
    ex.file.exact = "exp(t)";
    ex.file.degrees = {6, 8, 10};
    ex.file.output.points = {0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> pts{0.1, 0.3, 0.5, 0.7, 0.9};
    ex.tables.push_back({"reference", "Bernoulli collocation", pts, {6, 8, 10},
                         {{2.56e-8, 4.12e-11, 4.40e-14},
                          {2.43e-8, 3.92e-11, 4.23e-14},
                          {2.44e-8, 3.93e-11, 4.24e-14},
                          {2.47e-8, 3.98e-11, 4.29e-14},
                          {2.56e-8, 4.14e-11, 4.43e-14}}});
    ex.tables.push_back({"reference", "Lagrange polynomials", pts, {6, 10},
                         {{8.66e-9, 1.04e-12},
                          {1.60e-8, 4.57e-14},
                          {2.49e-8, 2.82e-11},
                          {4.19e-8, 3.12e-11},
                          {5.93e-8, 1.46e-10}}});
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> examples = make_examples();
  return examples;
}

const BuiltinExample* find_example(const std::string& id) {
  for (const auto& ex : builtin_examples()) {
    if (ex.id == id) return &ex;
  }
  return nullptr;
}

}  // namespace varfrac
