#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subguard::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericFailure = 3;

/// Runs one invocation. `args` excludes the program name. Artifacts go to
/// `out` (or the --out file); errors go to `err` as single-line JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subguard::cli
