#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morsekit::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kCheckFailed = 2,
  kUsage = 3,
};

/// Runs one invocation. `args` excludes the program name. A FILE argument of
/// "-" is read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace morsekit::cli
