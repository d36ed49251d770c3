#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conglab {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitSuiteFailure = 1,
  kExitParse = 2,
  kExitCap = 3,
  kExitInternal = 4,
  kExitIo = 5,
  kExitPrecondition = 6,
};

/// Runs one command line (args excludes the program name). Reports go to
/// out; errors go to err as a single "error: <kind>: <reason>" line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conglab
