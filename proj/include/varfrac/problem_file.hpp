#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varfrac/collocation_solver.hpp"
#include "varfrac/expression.hpp"

namespace varfrac {

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  /// Explicit sample points; takes precedence over `grid`.
  std::vector<double> points;
  /// Uniform grid k / grid, k = 1..grid.
  std::optional<int> grid;
  OutputFormat format = OutputFormat::Csv;
};

/// Textual problem definition. Expressions are kept as source so the
/// document can be written back out unchanged.
///
/// The on-disk form is a JSON object with keys name, alpha, n, term_orders,
/// rhs, deformed_args, initial_values, exact, M, output. Unknown keys are
/// rejected. `rhs` may use t, y, d1..dk (term-order derivatives) and the
/// names declared in deformed_args (each bound to y(theta(t))).
struct ProblemFile {
  std::string name;
  std::string alpha;
  int n = 0;
  std::vector<std::string> term_orders;
  std::string rhs;
  std::vector<std::pair<std::string, std::string>> deformed_args;
  std::vector<double> initial_values;
  std::optional<std::string> exact;
  std::vector<int> degrees;
  OutputSpec output;
};

/// Parses and schema-checks a problem document. Every failure is a
/// SchemaError whose key() names the offending field.
ProblemFile parse_problem_file(const std::string& text);

/// Reads `path` (IoError on failure) and parses it.
ProblemFile load_problem_file(const std::string& path);

std::string to_json_text(const ProblemFile& file);

/// A problem ready to solve plus its optional exact solution.
struct CompiledProblem {
  ProblemPtr problem;
  std::optional<expr::Expr> exact;
};

/// Compiles expressions and constructs the FdeProblem; errors are SchemaError.
CompiledProblem compile(const ProblemFile& file);

}  // namespace varfrac
