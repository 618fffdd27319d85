#pragma once

#include <iosfwd>

namespace hfrac::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3, kRegime = 4 };

/// Runs one hadamard-frac command. Output goes to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hfrac::cli
