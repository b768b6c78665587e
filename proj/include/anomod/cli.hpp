#pragma once

// Command-line front end. Kept in the library so the tests can drive it
// without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace anomod::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kError = 2 };

/// Runs one invocation; args excludes the program name. Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anomod::cli
