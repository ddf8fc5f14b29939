#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcg {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitCap = 3 };

/// Runs the tool on `args` (without the program name), writing reports to
/// `out` and diagnostics to `err`.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcg
