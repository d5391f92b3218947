#include "tbfrac/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>

#include "tbfrac/expression.hpp"

namespace tbfrac {

namespace {

std::string trim(std::string_view s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  const auto first = std::find_if(s.begin(), s.end(), not_space);
  const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string(first, last) : std::string();
}

double parse_number(const std::string& text, int line) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError("expected a number, got '" + t + "'", line);
  return v;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, int line)
    : std::invalid_argument(line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what),
      line_(line) {}

ProblemConfig parse_problem_config(std::istream& in) {
  ProblemConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);

    if (key == "builtin") {
      const double id = parse_number(value, line);
      if (id != 1.0 && id != 2.0 && id != 3.0) throw ConfigError("builtin must be 1, 2 or 3", line);
      cfg.builtin = static_cast<int>(id);
    } else if (key == "gamma") {
      cfg.gamma = parse_number(value, line);
    } else if (key == "alpha") {
      cfg.alpha = parse_number(value, line);
    } else if (key == "T") {
      cfg.horizon = parse_number(value, line);
    } else if (key == "domain") {
      const auto comma = value.find(',');
      if (comma == std::string::npos) throw ConfigError("domain needs two values 'a, b'", line);
      cfg.a = parse_number(value.substr(0, comma), line);
      cfg.b = parse_number(value.substr(comma + 1), line);
    } else if (key == "term") {
      const auto colon = value.find(':');
      if (colon == std::string::npos) throw ConfigError("term needs 'power : expression'", line);
      RecipeTerm term{parse_number(value.substr(0, colon), line), trim(value.substr(colon + 1))};
      try {
        (void)Expression::parse(term.expression);
      } catch (const ExpressionError& e) {
        throw ConfigError(e.what(), line);
      }
      cfg.terms.push_back(std::move(term));
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }
  return cfg;
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string(), 0);
  return parse_problem_config(in);
}

ProblemSpec build_problem(const ProblemConfig& cfg, std::optional<double> gamma_override) {
  const std::optional<double> gamma = gamma_override ? gamma_override : cfg.gamma;
  if (cfg.builtin && !cfg.terms.empty()) throw ConfigError("give either builtin or term entries, not both", 0);
  if (cfg.builtin) {
    if (cfg.alpha || cfg.a) throw ConfigError("alpha and domain are fixed for builtin problems", 0);
    ProblemSpec spec = builtin_example(*cfg.builtin, gamma);
    if (cfg.horizon) spec.horizon = *cfg.horizon;
    spec.validate();
    return spec;
  }
  if (cfg.terms.empty()) throw ConfigError("no builtin and no term entries", 0);
  if (!gamma) throw ConfigError("gamma is required for recipe problems", 0);

  SeparableSolution u;
  for (const auto& t : cfg.terms) {
    const Expression g = Expression::parse(t.expression);
    u.terms.push_back({t.power, [g](double x) { return g(x); }});
  }
  ProblemSpec spec = manufactured_problem("recipe", u, cfg.alpha.value_or(0.0), FractionalOrder(*gamma),
                                          cfg.a.value_or(0.0), cfg.b.value_or(1.0), cfg.horizon.value_or(1.0));
  spec.validate();
  return spec;
}

}  // namespace tbfrac
