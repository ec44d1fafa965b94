#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlc::cli {

enum ExitCode : int { kOk = 0, kComputeFailure = 1, kValidationError = 2 };

/// Runs the mlc command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlc::cli
