#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbfrac/problem.hpp"

namespace tbfrac {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

struct RecipeTerm {
  double power;
  std::string expression;
};

/// Plain-text problem description, one `key = value` per line, `#` starts a
/// comment. Keys:
///
///   builtin = 1|2|3            use a benchmark problem
///   gamma   = 1.5              fractional order
///   alpha   = 1                reaction coefficient (recipes only)
///   domain  = 0, 1             spatial interval (recipes only)
///   T       = 1                time horizon
///   term    = 2 : sinh(x)      one t^p g(x) term of the exact solution
///
/// Either `builtin` or at least one `term` must be given, not both.
struct ProblemConfig {
  std::optional<int> builtin;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> horizon;
  std::vector<RecipeTerm> terms;
};

ProblemConfig parse_problem_config(std::istream& in);
ProblemConfig load_problem_config(const std::filesystem::path& path);

/// Builds and validates the problem. `gamma_override` wins over the file.
ProblemSpec build_problem(const ProblemConfig& config, std::optional<double> gamma_override = std::nullopt);

}  // namespace tbfrac
