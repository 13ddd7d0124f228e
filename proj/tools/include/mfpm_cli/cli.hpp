#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mfpm::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kInputError = 2 };

// Runs one subcommand; `args` excludes the program name. The report goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfpm::cli
