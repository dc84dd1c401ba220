#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellsheaf::cli {

/// Exit codes: 0 every check passed, 1 a verification check failed,
/// 2 usage, parse or input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// usage and input diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cellsheaf::cli
