#pragma once

#include <ostream>

namespace scheme_forge {

enum ExitCode : int {
  kExitOk = 0,
  kExitRefuted = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

// Parses argv (argv[0] is the program name), runs one subcommand and writes a
// single JSON document to `out`. Diagnostics and progress go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scheme_forge
