#include "tbfrac/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tbfrac/config.hpp"
#include "tbfrac/expression.hpp"
#include "tbfrac/solver.hpp"
#include "tbfrac/stability.hpp"

namespace tbfrac::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson };

struct ProblemSelection {
  int builtin = 0;
  std::string config_path;
  std::optional<double> gamma;
};

ProblemSpec load_problem(const ProblemSelection& sel, std::optional<double> gamma) {
  if (sel.builtin != 0 && !sel.config_path.empty()) throw UsageError("give either --problem or --config");
  if (!sel.config_path.empty()) return build_problem(load_problem_config(sel.config_path), gamma);
  const int id = sel.builtin == 0 ? 1 : sel.builtin;
  if (id < 1 || id > kBuiltinCount) throw UsageError("unknown builtin problem " + std::to_string(id));
  ProblemSpec spec = builtin_example(id, gamma);
  spec.validate();
  return spec;
}

/// Level index for report time t; t must sit on the time grid.
int level_for_time(double t, const ProblemSpec& spec, int M) {
  if (t < 0.0 || t > spec.horizon * (1.0 + 1e-12))
    throw UsageError("report time " + format_number(t) + " is outside [0, T]");
  const double dt = spec.horizon / M;
  const double n = std::round(t / dt);
  if (std::abs(n * dt - t) > 1e-9 * std::max(1.0, spec.horizon))
    throw UsageError("report time " + format_number(t) + " is not a multiple of dt = " + format_number(dt));
  return static_cast<int>(n);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

std::string csv_optional(double v) { return std::isnan(v) ? std::string() : format_number(v); }

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- solve

struct SolveOptions {
  ProblemSelection problem;
  int N = 80;
  int M = 100;
  std::string times;
  Format format = Format::kCsv;
  std::string out;
  std::string errors_out;
};

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = load_problem(o.problem, o.problem.gamma);
  if (o.N < 3 || o.M < 2) throw UsageError("need N >= 3 and M >= 2");
  std::vector<double> times = parse_number_list(o.times);
  if (times.empty()) times.push_back(spec.horizon);
  std::vector<int> levels;
  for (double t : times) levels.push_back(level_for_time(t, spec, o.M));

  const SolutionHistory sol = solve(spec, o.N, o.M);
  const Eigen::VectorXd x = sol.grid.knots();

  std::ostringstream data;
  std::ostringstream errors;
  json doc;
  if (o.format == Format::kCsv) {
    data << "t,x,numeric,exact,abs_error\n";
    errors << "t,N,M,l2,linf\n";
  } else {
    doc = {{"problem", spec.name}, {"gamma", spec.gamma.value()}, {"alpha", spec.alpha},
           {"N", o.N},             {"M", o.M},                    {"profiles", json::array()},
           {"errors", json::array()}};
  }

  for (std::size_t r = 0; r < times.size(); ++r) {
    const int n = levels[r];
    const double t = sol.times[static_cast<std::size_t>(n)];
    const Eigen::VectorXd u = sol.at_level(n);
    json profile = {{"t", t}, {"x", json::array()}, {"numeric", json::array()},
                    {"exact", json::array()}, {"abs_error", json::array()}};
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      const double exact = spec.exact ? (*spec.exact)(x(j), t) : std::numeric_limits<double>::quiet_NaN();
      const double e = std::abs(exact - u(j));
      if (o.format == Format::kCsv) {
        data << format_number(t) << ',' << format_number(x(j)) << ',' << format_number(u(j)) << ','
             << csv_optional(exact) << ',' << csv_optional(e) << '\n';
      } else {
        profile["x"].push_back(x(j));
        profile["numeric"].push_back(u(j));
        profile["exact"].push_back(json_number(exact));
        profile["abs_error"].push_back(json_number(e));
      }
    }
    if (o.format == Format::kJson) doc["profiles"].push_back(std::move(profile));
    if (spec.exact) {
      const ErrorReport rep = error_norms(u, *spec.exact, sol.grid, t, o.M);
      err << "t=" << format_number(t) << "  L2=" << format_number(rep.l2) << "  Linf=" << format_number(rep.linf)
          << '\n';
      if (o.format == Format::kCsv)
        errors << format_number(t) << ',' << rep.N << ',' << rep.M << ',' << format_number(rep.l2) << ','
               << format_number(rep.linf) << '\n';
      else
        doc["errors"].push_back({{"t", t}, {"N", rep.N}, {"M", rep.M}, {"l2", rep.l2}, {"linf", rep.linf}});
    }
  }

  if (o.format == Format::kJson) {
    emit(doc.dump(2) + "\n", o.out, out);
  } else {
    emit(data.str(), o.out, out);
    if (!o.errors_out.empty()) emit(errors.str(), o.errors_out, out);
  }
  return kSuccess;
}

// ------------------------------------------------------------- converge

struct ConvergeOptions {
  ProblemSelection problem;
  std::string n_list = "20,40,80";
  std::string m_list;
  std::string gamma_list;
  std::string time;
  Format format = Format::kCsv;
  std::string out;
};

struct ConvergeRow {
  double gamma;
  int N;
  int M;
  double t;
  ErrorReport report;
};

int cmd_converge(const ConvergeOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<int> ns;
  std::vector<int> ms;
  for (double v : parse_number_list(o.n_list)) ns.push_back(static_cast<int>(v));
  for (double v : parse_number_list(o.m_list.empty() ? o.n_list : o.m_list)) ms.push_back(static_cast<int>(v));
  if (ns.size() != ms.size()) throw UsageError("--N and --M lists must have the same length");
  if (ns.size() < 2) throw UsageError("converge needs at least two resolutions");

  std::vector<std::optional<double>> gammas;
  for (double g : parse_number_list(o.gamma_list)) gammas.emplace_back(g);
  if (gammas.empty()) gammas.emplace_back(o.problem.gamma);

  // Problems are built up front so configuration errors surface as usage errors.
  std::vector<ProblemSpec> specs;
  for (const auto& g : gammas) {
    specs.push_back(load_problem(o.problem, g));
    if (!specs.back().exact) throw UsageError("converge needs a problem with a known exact solution");
  }
  const double t_report = o.time.empty() ? specs.front().horizon : parse_number_list(o.time).at(0);
  for (const auto& spec : specs)
    for (int M : ms) (void)level_for_time(t_report, spec, M);

  std::vector<std::future<ConvergeRow>> jobs;
  for (const auto& spec : specs) {
    for (std::size_t r = 0; r < ns.size(); ++r) {
      jobs.push_back(std::async(std::launch::async, [&spec, t_report, N = ns[r], M = ms[r]] {
        const SolutionHistory sol = solve(spec, N, M);
        const int n = static_cast<int>(std::round(t_report / (spec.horizon / M)));
        const double t = sol.times[static_cast<std::size_t>(n)];
        return ConvergeRow{spec.gamma.value(), N, M, t, error_norms(sol.at_level(n), *spec.exact, sol.grid, t, M)};
      }));
    }
  }
  std::vector<ConvergeRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  const auto order = [](double coarse, double fine) {
    return coarse > 0.0 && fine > 0.0 ? std::log2(coarse / fine) : std::numeric_limits<double>::quiet_NaN();
  };

  std::ostringstream data;
  json doc = {{"problem", specs.front().name}, {"blocks", json::array()}};
  if (o.format == Format::kCsv) data << "gamma,N,M,t,l2,linf,order_l2,order_linf\n";
  for (std::size_t g = 0; g < specs.size(); ++g) {
    json block = {{"gamma", specs[g].gamma.value()}, {"rows", json::array()}};
    for (std::size_t r = 0; r < ns.size(); ++r) {
      const ConvergeRow& row = rows[g * ns.size() + r];
      double ol2 = std::numeric_limits<double>::quiet_NaN();
      double olinf = ol2;
      if (r > 0) {
        const ConvergeRow& prev = rows[g * ns.size() + r - 1];
        ol2 = order(prev.report.l2, row.report.l2);
        olinf = order(prev.report.linf, row.report.linf);
      }
      if (o.format == Format::kCsv) {
        data << format_number(row.gamma) << ',' << row.N << ',' << row.M << ',' << format_number(row.t) << ','
             << format_number(row.report.l2) << ',' << format_number(row.report.linf) << ',' << csv_optional(ol2)
             << ',' << csv_optional(olinf) << '\n';
      } else {
        block["rows"].push_back({{"N", row.N},
                                 {"M", row.M},
                                 {"t", row.t},
                                 {"l2", row.report.l2},
                                 {"linf", row.report.linf},
                                 {"order_l2", json_number(ol2)},
                                 {"order_linf", json_number(olinf)}});
      }
      err << "gamma=" << format_number(row.gamma) << " N=" << row.N << " M=" << row.M
          << " Linf=" << format_number(row.report.linf) << '\n';
    }
    if (o.format == Format::kJson) doc["blocks"].push_back(std::move(block));
  }
  emit(o.format == Format::kCsv ? data.str() : doc.dump(2) + "\n", o.out, out);
  return kSuccess;
}

// ------------------------------------------------------------ stability

struct StabilityOptions {
  std::optional<std::string> gamma;
  std::optional<std::string> h;
  std::optional<std::string> dt;
  std::optional<std::string> alpha;
  std::optional<std::string> beta_h;
  std::size_t steps = 500;
  double xi0 = 1.0;
  std::string start = "at-rest";
  unsigned threads = 0;
  Format format = Format::kCsv;
  std::string out;
};

int cmd_stability(const StabilityOptions& o, std::ostream& out, std::ostream& err) {
  SweepRanges ranges = default_sweep();
  if (o.gamma) ranges.gamma = parse_number_list(*o.gamma);
  if (o.h) ranges.h = parse_number_list(*o.h);
  if (o.dt) ranges.dt = parse_number_list(*o.dt);
  if (o.alpha) ranges.alpha = parse_number_list(*o.alpha);
  if (o.beta_h) ranges.beta_h = parse_number_list(*o.beta_h);
  ranges.n_max = o.steps;
  ranges.xi0 = o.xi0;
  if (o.start == "at-rest")
    ranges.start = XiStart::kAtRest;
  else if (o.start == "impulse")
    ranges.start = XiStart::kImpulse;
  else
    throw UsageError("--start must be 'at-rest' or 'impulse'");
  if (ranges.n_max < 1) throw UsageError("--steps must be >= 1");
  for (double g : ranges.gamma) (void)FractionalOrder(g);

  const ScanReport report = empirical_stability_scan(ranges, o.threads);

  std::ostringstream data;
  json doc = {{"start", o.start}, {"steps", ranges.n_max}, {"xi0", ranges.xi0}, {"entries", json::array()}};
  if (o.format == Format::kCsv) data << "gamma,h,dt,alpha,beta_h,nu,max_ratio,nu_ok,bound_ok,gamma2_corner\n";
  for (const ScanEntry& e : report.entries) {
    if (o.format == Format::kCsv) {
      data << format_number(e.params.gamma) << ',' << format_number(e.params.h) << ',' << format_number(e.params.dt)
           << ',' << format_number(e.params.alpha) << ',' << format_number(e.beta_h) << ',' << format_number(e.nu)
           << ',' << format_number(e.max_ratio) << ',' << (e.nu_ok ? 1 : 0) << ',' << (e.bound_ok ? 1 : 0) << ','
           << (e.gamma2_corner ? 1 : 0) << '\n';
    } else {
      doc["entries"].push_back({{"gamma", e.params.gamma},
                                {"h", e.params.h},
                                {"dt", e.params.dt},
                                {"alpha", e.params.alpha},
                                {"beta_h", e.beta_h},
                                {"nu", e.nu},
                                {"max_ratio", json_number(e.max_ratio)},
                                {"nu_ok", e.nu_ok},
                                {"bound_ok", e.bound_ok},
                                {"gamma2_corner", e.gamma2_corner}});
    }
  }
  doc["violations"] = report.violations();
  doc["corner_violations"] = report.corner_violations();
  emit(o.format == Format::kCsv ? data.str() : doc.dump(2) + "\n", o.out, out);

  err << report.entries.size() << " points, " << report.violations() << " violations";
  if (report.corner_violations() > 0)
    err << ", " << report.corner_violations() << " at the gamma = 2 corner (growth expected there)";
  err << '\n';
  for (const ScanEntry& e : report.entries) {
    if (e.violation() && !e.gamma2_corner)
      err << "violation: gamma=" << format_number(e.params.gamma) << " h=" << format_number(e.params.h)
          << " dt=" << format_number(e.params.dt) << " alpha=" << format_number(e.params.alpha)
          << " beta_h=" << format_number(e.beta_h) << " nu=" << format_number(e.nu)
          << " max|xi|/|xi0|=" << format_number(e.max_ratio) << '\n';
  }
  return report.violations() > 0 ? kStabilityViolation : kSuccess;
}

// -------------------------------------------------------- list-problems

int cmd_list(Format format, const std::string& path, std::ostream& out) {
  std::ostringstream data;
  json doc = json::array();
  if (format == Format::kCsv) data << "id,name,default_gamma,alpha,description\n";
  for (int id = 1; id <= kBuiltinCount; ++id) {
    const ProblemSpec spec = builtin_example(id);
    if (format == Format::kCsv)
      data << id << ',' << spec.name << ',' << format_number(spec.gamma.value()) << ',' << format_number(spec.alpha)
           << ",\"" << builtin_description(id) << "\"\n";
    else
      doc.push_back({{"id", id},
                     {"name", spec.name},
                     {"default_gamma", spec.gamma.value()},
                     {"alpha", spec.alpha},
                     {"description", builtin_description(id)}});
  }
  emit(format == Format::kCsv ? data.str() : doc.dump(2) + "\n", path, out);
  return kSuccess;
}

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::kCsv}, {"json", Format::kJson}}));
}

void add_problem(CLI::App* cmd, ProblemSelection& sel) {
  cmd->add_option("--problem", sel.builtin, "Builtin problem id (1-3)");
  cmd->add_option("--config", sel.config_path, "Problem configuration file");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    if (item.find_first_not_of(" \t") != std::string::npos) {
      try {
        const Expression e = Expression::parse(item);
        const Jet<double> v = e(0.0);
        if (v.d1 != 0.0 || v.d2 != 0.0) throw UsageError("list item '" + item + "' must be constant");
        values.push_back(v.v);
      } catch (const ExpressionError& ex) {
        throw UsageError("bad list item '" + item + "': " + ex.what());
      }
    }
    start = comma + 1;
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trigonometric B-spline collocation solver for time-fractional diffusion-wave equations", "tbfrac"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and write knot profiles");
  add_problem(solve_cmd, solve_opts.problem);
  solve_cmd->add_option("--gamma", solve_opts.problem.gamma, "Fractional order override");
  solve_cmd->add_option("--N", solve_opts.N, "Number of spatial intervals")->capture_default_str();
  solve_cmd->add_option("--M", solve_opts.M, "Number of time steps")->capture_default_str();
  solve_cmd->add_option("--times", solve_opts.times, "Comma-separated report times (default T)");
  solve_cmd->add_option("--out", solve_opts.out, "Output file (default stdout)");
  solve_cmd->add_option("--errors", solve_opts.errors_out, "CSV file for per-time error norms");
  add_format(solve_cmd, solve_opts.format);

  ConvergeOptions conv_opts;
  auto* conv_cmd = app.add_subcommand("converge", "Error table under simultaneous (N, M) refinement");
  add_problem(conv_cmd, conv_opts.problem);
  conv_cmd->add_option("--gamma", conv_opts.gamma_list, "Comma-separated fractional orders");
  conv_cmd->add_option("--N", conv_opts.n_list, "Comma-separated interval counts")->capture_default_str();
  conv_cmd->add_option("--M", conv_opts.m_list, "Comma-separated step counts (default: same as --N)");
  conv_cmd->add_option("--times", conv_opts.time, "Report time (default T)");
  conv_cmd->add_option("--out", conv_opts.out, "Output file (default stdout)");
  add_format(conv_cmd, conv_opts.format);

  StabilityOptions stab_opts;
  auto* stab_cmd = app.add_subcommand("stability", "Growth-factor sweep over mode and mesh parameters");
  stab_cmd->set_help_flag("--help", "Print this help message and exit");
  stab_cmd->add_option("--gamma", stab_opts.gamma, "Comma-separated fractional orders");
  stab_cmd->add_option("--h", stab_opts.h, "Comma-separated mesh widths");
  stab_cmd->add_option("--dt", stab_opts.dt, "Comma-separated time steps");
  stab_cmd->add_option("--alpha", stab_opts.alpha, "Comma-separated reaction coefficients");
  stab_cmd->add_option("--beta-h", stab_opts.beta_h, "Comma-separated beta*h values, e.g. 0,pi/8,pi");
  stab_cmd->add_option("--steps", stab_opts.steps, "Recursion length")->capture_default_str();
  stab_cmd->add_option("--xi0", stab_opts.xi0, "Initial growth factor")->capture_default_str();
  stab_cmd->add_option("--start", stab_opts.start, "Recursion start: at-rest or impulse")->capture_default_str();
  stab_cmd->add_option("--threads", stab_opts.threads, "Worker threads (0 = all cores)");
  stab_cmd->add_option("--out", stab_opts.out, "Output file (default stdout)");
  add_format(stab_cmd, stab_opts.format);

  Format list_format = Format::kCsv;
  std::string list_out;
  auto* list_cmd = app.add_subcommand("list-problems", "List the builtin benchmark problems");
  list_cmd->add_option("--out", list_out, "Output file (default stdout)");
  add_format(list_cmd, list_format);

  std::vector<const char*> argv;
  argv.push_back("tbfrac");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_opts, out, err);
    if (*conv_cmd) return cmd_converge(conv_opts, out, err);
    if (*stab_cmd) return cmd_stability(stab_opts, out, err);
    if (*list_cmd) return cmd_list(list_format, list_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SingularPivotError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace tbfrac::cli
