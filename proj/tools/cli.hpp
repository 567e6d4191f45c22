#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fisherce::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs one command. `args` excludes the program name. JSON goes to `out`, a
/// one-line human summary to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fisherce::cli
