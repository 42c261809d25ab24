#pragma once

#include <iosfwd>

namespace diagcubic::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kResourceGuard = 3,
};

// Entry point of the diagcubic tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diagcubic::cli
