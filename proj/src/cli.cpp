#include "varfrac/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "varfrac/errors.hpp"
#include "varfrac/examples.hpp"
#include "varfrac/report.hpp"

namespace varfrac {

namespace {

void print_summary(const RunResult& result, std::ostream& err) {
  for (const auto& r : result.per_degree) {
    char line[256];
    if (r.converged) {
      std::snprintf(line, sizeof line, "M=%d: converged (%s) in %d iterations, residual %.3e",
                    r.degree, r.convergence.criterion.c_str(), r.convergence.iterations,
                    r.convergence.residual_norm);
      err << line;
      if (r.l2_error) {
        std::snprintf(line, sizeof line, ", L2 error %.3e", *r.l2_error);
        err << line;
      }
      err << '\n';
    } else {
      err << "M=" << r.degree << ": " << r.error << '\n';
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral collocation solver for variable-order fractional differential equations",
               "varfrac"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Solve a problem file or a built-in example");
  std::string target;
  std::vector<int> degrees;
  std::vector<double> points;
  std::optional<int> grid;
  std::string format;
  std::string out_path;
  SolveOptions solve_options;
  run_cmd->add_option("target", target, "Problem file path or example1..example5")->required();
  run_cmd->add_option("--M", degrees, "Comma-separated basis degrees")->delimiter(',');
  auto* points_opt =
      run_cmd->add_option("--points", points, "Comma-separated sample points")->delimiter(',');
  auto* grid_opt = run_cmd->add_option("--grid", grid, "Uniform grid k/N, k = 1..N");
  points_opt->excludes(grid_opt);
  run_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--out", out_path, "Write the table here instead of stdout");
  run_cmd->add_option("--tol", solve_options.tolerance, "Residual tolerance")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-iters", solve_options.max_iterations, "Newton iteration cap")
      ->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "List the built-in examples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }

  if (list_cmd->parsed()) {
    for (const auto& ex : builtin_examples()) out << ex.id << "  " << ex.description << '\n';
    return kExitOk;
  }

  try {
    ProblemFile file;
    if (const auto* ex = find_example(target)) {
      file = ex->file;
    } else {
      file = load_problem_file(target);
    }

    RunOptions options;
    options.degrees = degrees;
    options.output = file.output;
    if (!points.empty()) {
      for (double t : points) {
        if (t < 0.0 || t > 1.0) throw SchemaError("--points", "points must lie in [0, 1]");
      }
      options.output.points = points;
      options.output.grid.reset();
    } else if (grid) {
      if (*grid < 0) throw SchemaError("--grid", "grid size must be non-negative");
      options.output.points.clear();
      options.output.grid = grid;
    }
    if (format == "json") {
      options.output.format = OutputFormat::Json;
    } else if (format == "csv") {
      options.output.format = OutputFormat::Csv;
    }
    for (int m : degrees) {
      if (m < 0 || m > kMaxDegree) {
        throw SchemaError("--M", "degree " + std::to_string(m) + " outside [0, " +
                                     std::to_string(kMaxDegree) + "]");
      }
    }
    options.solve = solve_options;

    const auto result = run(file, options);
    const auto text = emit_table(result, options.output.format);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file_out(out_path);
      if (!file_out) throw IoError("cannot write '" + out_path + "'");
      file_out << text;
      if (!file_out) throw IoError("failed writing '" + out_path + "'");
    }
    print_summary(result, err);
    return result.all_converged() ? kExitOk : kExitNoConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }
}

}  // namespace varfrac
