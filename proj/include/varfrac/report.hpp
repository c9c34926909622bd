#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varfrac/problem_file.hpp"

namespace varfrac {

struct RunOptions {
  std::vector<int> degrees;
  OutputSpec output;
  SolveOptions solve;
};

struct DegreeResult {
  int degree = 0;
  bool converged = false;
  std::string error;
  std::vector<double> coefficients;
  ConvergenceInfo convergence;
  /// y_M at each sample point.
  std::vector<double> values;
  /// |y_M - exact| at each sample point; empty without an exact solution.
  std::vector<double> abs_errors;
  std::optional<double> l2_error;
};

struct RunResult {
  std::string name;
  std::vector<double> points;
  bool has_exact = false;
  /// y(0), which equals the first initial value.
  double value_at_zero = 0.0;
  /// Sorted by ascending degree.
  std::vector<DegreeResult> per_degree;

  bool all_converged() const;
};

/// Sample points from an output spec: explicit points, else k/grid for
/// k = 1..grid (default grid 10).
std::vector<double> sample_points(const OutputSpec& output);

/// Solves `file` at every requested degree. Degrees are solved concurrently;
/// results come back in ascending degree order. Solver failures are recorded
/// per degree rather than thrown.
RunResult run(const ProblemFile& file, const RunOptions& options);

/// CSV: header `t,M=<d>...`, one row per point, absolute errors when an exact
/// solution is known and y_M otherwise, in 3-significant-digit scientific
/// notation. JSON: the full result at round-trip precision.
std::string emit_table(const RunResult& result, OutputFormat format);

}  // namespace varfrac
