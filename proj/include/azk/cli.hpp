#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace azk::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kViolation = 2 };

/// Runs one command. `args` excludes the program name. `terminal` says
/// whether `out` is an interactive terminal (used by AZK_COLOR=auto).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool terminal = false);

}  // namespace azk::cli
