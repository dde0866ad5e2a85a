#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace katu::cli {

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` (or the --out file), diagnostics to `err`. Returns the exit status:
/// 0 on success, 2 for domain, I/O and parse errors, CLI11's own code for
/// malformed flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest-round-trip-safe rendering used for every CSV number (17 significant digits).
std::string format_number(double value);

}  // namespace katu::cli
