#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scprod::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs the command line `args` (without the program name). Progress and
/// summaries go to `out`, diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scprod::cli
