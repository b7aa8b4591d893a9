#pragma once

#include <iosfwd>

namespace fdez::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitReject = 1,
  kExitParse = 2,
  kExitDimension = 3,
  kExitNonReversible = 4,
};

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdez::cli
