#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vinerep::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kComputationError = 3,
};

/// Runs one CLI invocation; args[0] is the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vinerep::cli
