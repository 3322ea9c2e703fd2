#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conelap::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kNumeric = 3,
  kUnconverged = 4,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conelap::cli
