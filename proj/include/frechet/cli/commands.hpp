#pragma once

#include <ostream>

namespace frechet::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEstimatorFailure = 2;
inline constexpr int kExitDiagnosticFailure = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

// Parses argv (argv[0] is the program name) and runs one subcommand:
// fit, bayes, simulate or compare. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frechet::cli
