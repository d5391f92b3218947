#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tbfrac::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericalFailure = 2,
  kStabilityViolation = 3,
};

/// Entry point of the `tbfrac` tool. Subcommands: solve, converge,
/// stability, list-problems. Data goes to `out` unless --out names a file;
/// diagnostics and summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip scientific representation, independent of locale.
std::string format_number(double v);

/// Comma-separated list of numbers; each item may be a constant
/// expression such as "pi/8". Empty items are skipped.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace tbfrac::cli
