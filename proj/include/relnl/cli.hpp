#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relnl::cli {

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioFailure = 1;  // paper-suite scenario failed
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUndefinedRegime = 3;
inline constexpr int kExitIo = 4;

/// Runs the command line (arguments without the program name) against the
/// given streams. main() is a thin wrapper; tests drive this directly.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace relnl::cli
