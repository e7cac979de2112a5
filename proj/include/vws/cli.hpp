#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vws {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitValidation = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vws
