#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhb::cli {

/// Exit codes of the hh_bounds tool.
enum ExitCode : int {
  kOk = 0,
  kPropertyViolation = 1,
  kUsageError = 2,
  kConvexityRejected = 3,
  kEvaluationError = 4,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhb::cli
