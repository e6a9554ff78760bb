#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace affiso::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affiso::cli
