#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arakelov {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2, kExitIndeterminate = 3 };

/// Runs the command line interface on `args` (without the program name).
/// Reports go to `out`, diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arakelov
