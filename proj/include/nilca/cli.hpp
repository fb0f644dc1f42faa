#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilca {

enum ExitCode : int {
  kExitOk = 0,
  kExitFails = 1,
  kExitUnknown = 2,
  kExitUsage = 3,
  kExitFileNotFound = 4,
  kExitParse = 5,
  kExitGuard = 6,
  kExitDimension = 7,
  kExitBackground = 8,
  kExitOther = 9,
};

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilca
