#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varfrac {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitSchema = 2,
  kExitNoConvergence = 3,
};

/// Entry point of the `varfrac` command, minus the program name.
///
///   varfrac run <file|example1..example5> [--M <list>] [--points <list> | --grid <N>]
///               [--format csv|json] [--out <path>] [--tol <float>] [--max-iters <int>]
///   varfrac list
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varfrac
