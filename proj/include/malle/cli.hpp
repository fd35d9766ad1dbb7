#pragma once

#include <iosfwd>

namespace malle {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitResolution = 2,
  kExitValidation = 3,
  kExitCap = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace malle
