#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace passim::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kRuntime = 3 };

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace passim::cli
