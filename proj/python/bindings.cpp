#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "varfrac/bernoulli_basis.hpp"
#include "varfrac/collocation_solver.hpp"
#include "varfrac/errors.hpp"
#include "varfrac/examples.hpp"
#include "varfrac/expression.hpp"
#include "varfrac/fractional_operators.hpp"
#include "varfrac/problem_file.hpp"
#include "varfrac/report.hpp"
#include "varfrac/special_functions.hpp"

namespace py = pybind11;
using namespace varfrac;

namespace {

ProblemFile resolve(const std::string& target) {
  if (const auto* ex = find_example(target)) return ex->file;
  return parse_problem_file(target);
}

struct PySolution {
  SpectralSolution sol;
  std::optional<expr::Expr> exact;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bernoulli-polynomial collocation for variable-order fractional differential equations";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<EvalError>(m, "EvalError", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("gamma", [](double x) { return varfrac::gamma(x); }, py::arg("x"));
  m.def("gammainc_upper", &expr::gammainc_upper, py::arg("a"), py::arg("x"));
  m.def(
      "binomial", [](int n, int k) { return py::int_(py::str(binomial(n, k).str())); },
      py::arg("m"), py::arg("i"));
  m.def(
      "bernoulli_numbers",
      [](int max_index) {
        const auto b = bernoulli_numbers(max_index);
        auto fractions = py::module_::import("fractions").attr("Fraction");
        py::list out;
        for (const auto& v : b.values()) {
          out.append(fractions(py::int_(py::str(numerator(v).str())),
                               py::int_(py::str(denominator(v).str()))));
        }
        return out;
      },
      py::arg("max_index"), "Exact b_0..b_max_index as fractions.Fraction.");

  m.def("bernoulli_poly", [](int degree, double t) { return eval_poly(BasisSpec(degree), degree, t); },
        py::arg("m"), py::arg("t"));
  m.def("basis_vector", [](int degree, double t) { return basis_vector(BasisSpec(degree), t); },
        py::arg("degree"), py::arg("t"));
  m.def("q_matrix", [](int degree) { return BasisSpec(degree).q(); }, py::arg("degree"));
  m.def("q_inverse", [](int degree) { return BasisSpec(degree).q_inverse(); }, py::arg("degree"));
  m.def("gram_matrix", [](int degree) { return BasisSpec(degree).gram(); }, py::arg("degree"));
  m.def(
      "project",
      [](int degree, const std::function<double(double)>& f) {
        return project(BasisSpec(degree), f);
      },
      py::arg("degree"), py::arg("f"));

  m.def(
      "operational_matrix",
      [](int degree, double order, double t) {
        return operational_matrix(BasisSpec(degree), order, t).p;
      },
      py::arg("degree"), py::arg("order"), py::arg("t"));
  m.def(
      "caputo",
      [](const std::function<double(int, double)>& f, double order, double t) {
        return caputo_oracle(f, order, t);
      },
      py::arg("derivative"), py::arg("order"), py::arg("t"),
      "Caputo derivative by quadrature; derivative(k, s) returns the k-th derivative at s.");

  py::class_<expr::Expr>(m, "Expr")
      .def("__call__",
           [](const expr::Expr& e, py::args args) {
             std::vector<double> values;
             for (const auto& a : args) values.push_back(a.cast<double>());
             return e(values);
           })
      .def("__str__", [](const expr::Expr& e) { return expr::print(e); })
      .def("__eq__", [](const expr::Expr& a, const expr::Expr& b) { return a == b; });
  m.def("parse_expression", &expr::parse, py::arg("source"),
        py::arg("variables") = std::vector<std::string>{"t"});

  m.def("examples", [] {
    std::vector<std::string> ids;
    for (const auto& ex : builtin_examples()) ids.push_back(ex.id);
    return ids;
  });
  m.def(
      "example_json", [](const std::string& id) { return to_json_text(resolve(id)); },
      py::arg("id"));
  m.def(
      "check_problem", [](const std::string& text) { return to_json_text(parse_problem_file(text)); },
      py::arg("text"), "Validates a JSON problem document and returns it normalised.");

  py::class_<PySolution>(m, "Solution")
      .def_property_readonly("coefficients",
                             [](const PySolution& s) { return s.sol.coefficients(); })
      .def_property_readonly("degree", [](const PySolution& s) { return s.sol.degree(); })
      .def_property_readonly("iterations",
                             [](const PySolution& s) { return s.sol.convergence().iterations; })
      .def_property_readonly("residual_norm",
                             [](const PySolution& s) { return s.sol.convergence().residual_norm; })
      .def_property_readonly("criterion",
                             [](const PySolution& s) { return s.sol.convergence().criterion; })
      .def("__call__", [](const PySolution& s, double t) { return eval_solution(s.sol, t); })
      .def(
          "caputo",
          [](const PySolution& s, double order, double t) {
            return eval_caputo_of_solution(s.sol, order, t);
          },
          py::arg("order"), py::arg("t"))
      .def("l2_error", [](const PySolution& s) {
        if (!s.exact) throw Error("problem has no exact solution");
        const auto& e = *s.exact;
        return l2_error(s.sol, [&](double t) { return e(t); });
      });

  m.def(
      "solve",
      [](const std::string& target, int degree, double tol, int max_iterations) {
        auto compiled = compile(resolve(target));
        SolveOptions options;
        options.tolerance = tol;
        options.max_iterations = max_iterations;
        py::gil_scoped_release release;
        return PySolution{solve(compiled.problem, degree, options), compiled.exact};
      },
      py::arg("problem"), py::arg("M"), py::arg("tol") = 1e-12, py::arg("max_iterations") = 100,
      "Solves an example id or a JSON problem document at degree M.");

  m.def(
      "run_table",
      [](const std::string& target, std::vector<int> degrees, std::vector<double> points,
         const std::string& format) {
        const auto file = resolve(target);
        RunOptions options;
        options.degrees = std::move(degrees);
        options.output = file.output;
        if (!points.empty()) {
          options.output.points = std::move(points);
          options.output.grid.reset();
        }
        const auto fmt = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        py::gil_scoped_release release;
        return emit_table(run(file, options), fmt);
      },
      py::arg("problem"), py::arg("M") = std::vector<int>{}, py::arg("points") = std::vector<double>{},
      py::arg("format") = "csv");

  m.def("theorem1_bound", &theorem1_bound, py::arg("M"), py::arg("kappa"));
  m.def("theorem2_bound", &theorem2_bound, py::arg("M"), py::arg("n"), py::arg("kappa"));
}
