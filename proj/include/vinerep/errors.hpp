#pragma once

#include <stdexcept>
#include <string>

namespace vinerep {

// Precondition violations raise std::invalid_argument. The two types below
// separate bad input data from computations that cannot complete; the CLI
// maps them to distinct exit codes.

/// Unreadable or malformed input files and records.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Guards, unreachable targets and non-convergence.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vinerep
