#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coexpand::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFalsified = 1,    // also: failed reproduce assertion, side not glueable, theorem alarm
  kUndecided = 2,    // Unknown / Unresolved / analysis error
  kUsage = 64,
  kParseError = 65,
};

/// Runs one command line.  `args` excludes the program name.  Reports go to
/// `out`; one-line diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coexpand::cli
