#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kbiframe::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,        ///< holds / feasible / success
    kExitNegative = 1,  ///< negative mathematical verdict (witness printed)
    kExitUsage = 2,     ///< usage, parse or I/O error
    kExitNumerical = 3, ///< numerical failure (no convergence, generation failed)
};

/// Runs the tool on `args` (program name excluded). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kbiframe::cli
