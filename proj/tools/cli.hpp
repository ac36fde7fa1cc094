#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binbell::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits with a '.' decimal separator regardless of locale.
std::string format_double(double value);

}  // namespace binbell::cli
