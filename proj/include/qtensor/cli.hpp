#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtensor {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitCertifiedNoSolution = 2,
  kExitNoSolutionFound = 3,
  kExitMismatch = 4,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"solve", "inst.txt", "--seed", "7"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qtensor
