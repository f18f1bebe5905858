#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interfere::cli {

enum ExitCode : int { kSuccess = 0, kVerdictFailure = 1, kUsageError = 2 };

/// Runs one command line (args excludes the program name). Reports go to the
/// --output target or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g", the round-trippable decimal form used in every CSV.
std::string format_double(double value);

}  // namespace interfere::cli
