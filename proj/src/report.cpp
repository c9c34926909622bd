#include "varfrac/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>

#include "json.hpp"
#include "varfrac/errors.hpp"

namespace varfrac {

namespace {

DegreeResult solve_one(const CompiledProblem& compiled, int degree,
                       const std::vector<double>& points, const SolveOptions& options) {
  DegreeResult out;
  out.degree = degree;
  try {
    const auto sol = solve(compiled.problem, degree, options);
    out.converged = true;
    out.convergence = sol.convergence();
    out.coefficients.assign(sol.coefficients().begin(), sol.coefficients().end());
    for (double t : points) {
      const double y = eval_solution(sol, t);
      out.values.push_back(y);
      if (compiled.exact) out.abs_errors.push_back(std::abs(y - (*compiled.exact)(t)));
    }
    if (compiled.exact) {
      const auto& exact = *compiled.exact;
      out.l2_error = l2_error(sol, [&exact](double t) { return exact(t); });
    }
  } catch (const SolverError& e) {
    out.converged = false;
    out.error = e.what();
    out.convergence.iterations = e.iteration();
    out.convergence.residual_norm = e.residual_norm();
  } catch (const Error& e) {
    out.converged = false;
    out.error = e.what();
  }
  return out;
}

std::string format_sci(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string format_point(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", t);
  return buf;
}

}  // namespace

bool RunResult::all_converged() const {
  return std::all_of(per_degree.begin(), per_degree.end(),
                     [](const DegreeResult& r) { return r.converged; });
}

std::vector<double> sample_points(const OutputSpec& output) {
  if (!output.points.empty()) return output.points;
  const int grid = output.grid.value_or(10);
  std::vector<double> points;
  for (int k = 1; k <= grid; ++k) points.push_back(static_cast<double>(k) / grid);
  return points;
}

RunResult run(const ProblemFile& file, const RunOptions& options) {
  const auto compiled = compile(file);
  std::vector<int> degrees = options.degrees.empty() ? file.degrees : options.degrees;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  RunResult result;
  result.name = file.name;
  result.points = sample_points(options.output);
  result.has_exact = compiled.exact.has_value();
  result.value_at_zero = file.initial_values.front();

  std::vector<std::future<DegreeResult>> jobs;
  for (int degree : degrees) {
    jobs.push_back(std::async(std::launch::async, solve_one, std::cref(compiled), degree,
                              std::cref(result.points), std::cref(options.solve)));
  }
  for (auto& job : jobs) result.per_degree.push_back(job.get());
  return result;
}

std::string emit_table(const RunResult& result, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    std::string out = "t";
    for (const auto& r : result.per_degree) out += ",M=" + std::to_string(r.degree);
    out += '\n';
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      out += format_point(result.points[i]);
      for (const auto& r : result.per_degree) {
        out += ',';
        if (!r.converged) {
          out += "NA";
        } else {
          out += format_sci(result.has_exact ? r.abs_errors[i] : r.values[i]);
        }
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json doc;
  doc["name"] = result.name;
  doc["y_at_zero"] = result.value_at_zero;
  doc["points"] = result.points;
  auto& runs = doc["results"] = nlohmann::ordered_json::array();
  for (const auto& r : result.per_degree) {
    nlohmann::ordered_json entry;
    entry["M"] = r.degree;
    entry["converged"] = r.converged;
    entry["iterations"] = r.convergence.iterations;
    entry["residual_norm"] = r.convergence.residual_norm;
    if (r.converged) {
      entry["criterion"] = r.convergence.criterion;
      entry["coefficients"] = r.coefficients;
      entry["values"] = r.values;
      if (result.has_exact) {
        entry["abs_errors"] = r.abs_errors;
        entry["l2_error"] = *r.l2_error;
      }
    } else {
      entry["error"] = r.error;
    }
    runs.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace varfrac
