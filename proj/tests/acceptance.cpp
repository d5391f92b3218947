// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tbfrac/basis.hpp"
#include "tbfrac/fractime.hpp"
#include "tbfrac/problem.hpp"
#include "tbfrac/solver.hpp"
#include "tbfrac/stability.hpp"
#include "tbfrac/tridiagonal.hpp"

using namespace tbfrac;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = r.ok && secs < limit_s;
  if (!ok) ++failures;
  std::printf("[%s] %d. %s: %s (%.3f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title, r.detail.c_str(), secs,
              limit_s);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome caputo_exactness() {
  double worst = 0.0;
  for (double g : {1.1, 1.5, 1.9}) {
    for (double dt : {0.1, 0.01}) {
      const CaputoWeights w = caputo_weights(FractionalOrder(g), dt, 100);
      std::vector<Eigen::VectorXd> hist;
      for (int k = -1; k <= 101; ++k) hist.push_back(Eigen::VectorXd::Constant(1, k * dt * k * dt));
      for (std::size_t n = 0; n < 100; ++n) {
        const std::span<const Eigen::VectorXd> window(hist.data(), n + 3);
        const double got = discrete_caputo(window, w)(0);
        const double want = oracle::caputo_t2(g, static_cast<double>(n + 1) * dt);
        worst = std::max(worst, std::abs(got - want) / want);
      }
    }
  }
  return {worst <= 1e-10, fmt("max relative error %.2e", worst)};
}

Outcome weight_laws() {
  const std::size_t n = 10000;
  bool ok = true;
  double worst_telescope = 0.0;
  for (double g : {1.05, 1.25, 1.5, 1.75, 1.95, 1.99}) {
    const CaputoWeights w = caputo_weights(FractionalOrder(g), 0.01, n);
    ok = ok && w.b[0] == 1.0;
    for (std::size_t j = 1; j <= n; ++j) ok = ok && w.b[j] < w.b[j - 1] && w.b[j] > 0.0;
    double s = 1.0 - w.b[1];
    for (std::size_t j = 1; j < n; ++j) s += w.b[j] - w.b[j + 1];
    s += w.b[n];
    worst_telescope = std::max(worst_telescope, std::abs(s - 1.0));
  }
  ok = ok && worst_telescope <= 1e-12;
  // gamma = 2: the weights degenerate to b_0 = 1 and b_j = 0.
  const CaputoWeights w2 = caputo_weights(FractionalOrder(2.0), 0.01, n);
  bool degenerate = w2.b[0] == 1.0;
  for (std::size_t j = 1; j <= n; ++j) degenerate = degenerate && w2.b[j] == 0.0;
  return {ok && degenerate, fmt("6 orders in (1,2), n = 1e4, telescoping error %.1e; gamma = 2 degenerate form ok",
                                worst_telescope)};
}

Outcome basis_consistency() {
  double worst_stencil = 0.0, worst_join = 0.0;
  for (double h : {0.1, 1.0 / 40, kPi / 3, 1.0 / 160}) {
    const Grid g(0.0, 12 * h, 12);
    const Stencil s = stencil_coefficients(h);
    const Stencil r = oracle::stencil_half_angle(h);
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (std::int64_t i : {-3, 0, 5}) {
      const std::array<double, 9> got = {eval_basis(i, g.knot(i + 1), g),
                                         eval_basis(i, g.knot(i + 2), g),
                                         eval_basis_derivative(i, g.knot(i + 1), g, 1),
                                         -eval_basis_derivative(i, g.knot(i + 3), g, 1),
                                         eval_basis_derivative(i, g.knot(i + 1), g, 2),
                                         eval_basis_derivative(i, g.knot(i + 2), g, 2),
                                         eval_basis(i, g.knot(i + 3), g),
                                         eval_basis_derivative(i, g.knot(i + 3), g, 2),
                                         -eval_basis_derivative(i, g.knot(i + 1), g, 1)};
      const std::array<double, 9> want = {s.a1, s.a2, s.a3, s.a3, s.a4, s.a5, s.a1, s.a4, -s.a3};
      for (std::size_t k = 0; k < 9; ++k) worst_stencil = std::max(worst_stencil, rel(got[k], want[k]));
      worst_stencil = std::max({worst_stencil, rel(s.a1, r.a1), rel(s.a2, r.a2), rel(s.a3, r.a3), rel(s.a5, r.a5)});
      for (int piece = 0; piece < 3; ++piece) {
        const auto l = detail::basis_piece(i, piece, g.knot(i + piece + 1), g);
        const auto rr = detail::basis_piece(i, piece + 1, g.knot(i + piece + 1), g);
        worst_join = std::max({worst_join, std::abs(l.v - rr.v), std::abs(l.d1 - rr.d1), std::abs(l.d2 - rr.d2)});
      }
    }
  }
  return {worst_stencil <= 1e-12 && worst_join <= 1e-10,
          fmt("stencil deviation %.1e, ", worst_stencil) + fmt("C2 junction jump %.1e", worst_join)};
}

Outcome linear_algebra() {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> size(4, 64);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_thomas = 0.0, worst_fit = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    TridiagonalSystem s{Eigen::VectorXd(n - 1), Eigen::VectorXd(n), Eigen::VectorXd(n - 1), Eigen::VectorXd(n)};
    for (auto& v : s.sub) v = u(rng);
    for (auto& v : s.super) v = u(rng);
    for (auto& v : s.rhs) v = u(rng);
    for (auto& v : s.diag) v = 2.5 + u(rng);
    const Eigen::VectorXd ref = oracle::dense_solve(oracle::dense_from_bands(s), s.rhs);
    worst_thomas = std::max(worst_thomas, (thomas_solve(s) - ref).cwiseAbs().maxCoeff());

    const Grid g(0.0, 1.0, n);
    const Stencil st = stencil_coefficients(g.h());
    const double k = 1.0 + 3.0 * (u(rng) + 1.0), phase = u(rng);
    const InitialProfile p{[=](double x) { return std::sin(k * x + phase) + x * x; },
                           [=](double x) { return k * std::cos(k * x + phase) + 2 * x; }};
    const Eigen::VectorXd c = fit_initial_coefficients(p, g, st);
    const Eigen::VectorXd cref = oracle::dense_initial_fit(p, g, st);
    worst_fit = std::max(worst_fit, (c - cref).cwiseAbs().maxCoeff());
  }
  return {worst_thomas <= 1e-12 && worst_fit <= 1e-12,
          fmt("100 trials, N <= 64: Thomas %.1e, ", worst_thomas) + fmt("initial fit %.1e", worst_fit)};
}

double linf_at(const ProblemSpec& p, int n, int m) {
  const SolutionHistory h = solve(p, n, m);
  return error_norms(h.at_level(m), *p.exact, h.grid, h.times.back(), m).linf;
}

Outcome benchmark_accuracy() {
  const double e1 = linf_at(builtin_example(1, 1.75), 80, 100);
  const double e2 = linf_at(builtin_example(2, 1.5), 60, 100);
  const double e3 = linf_at(builtin_example(3, 1.5), 60, 100);
  return {e1 <= 1e-3 && e2 <= 1e-3 && e3 <= 1e-3,
          fmt("Linf example 1 %.2e, ", e1) + fmt("example 2 %.2e, ", e2) + fmt("example 3 %.2e", e3)};
}

Outcome self_convergence() {
  bool ok = true;
  double worst_ratio = 0.0;
  for (int id = 1; id <= 3; ++id) {
    for (double g : {1.25, 1.5, 1.75}) {
      const ProblemSpec p = builtin_example(id, g);
      const double a = linf_at(p, 20, 20), b = linf_at(p, 40, 40), c = linf_at(p, 80, 80);
      ok = ok && a > b && b > c;
      worst_ratio = std::max({worst_ratio, b / a, c / b});
    }
  }
  return {ok, fmt("9 series strictly decreasing, largest successive ratio %.3f", worst_ratio)};
}

Outcome stability() {
  const ScanReport rest = empirical_stability_scan(default_sweep());
  double nu_min = INFINITY, ratio_max = 0.0;
  for (const auto& e : rest.entries) {
    nu_min = std::min(nu_min, e.nu);
    ratio_max = std::max(ratio_max, e.max_ratio);
  }
  SweepRanges impulse_ranges = default_sweep();
  impulse_ranges.start = XiStart::kImpulse;
  const std::size_t impulse_violations = empirical_stability_scan(impulse_ranges).violations();
  std::printf("     info: with the xi_1 = 2 xi_0 / nu start, %zu of %zu sweep points exceed the bound\n",
              impulse_violations, rest.entries.size());

  ProblemSpec p;
  p.name = "decay";
  p.gamma = FractionalOrder(1.5);
  p.horizon = 10.0;
  p.phi1 = {[](double x) { return std::sin(kPi * x); }, [](double x) { return kPi * std::cos(kPi * x); }};
  p.phi2 = {[](double) { return 0.0; }, [](double) { return 0.0; }};
  p.psi1 = [](double) { return 0.0; };
  p.psi2 = p.psi1;
  p.source = [](double, double) { return 0.0; };
  const SolutionHistory h = solve(p, 40, 1000);
  const double initial = h.values.row(0).cwiseAbs().maxCoeff();
  const double peak = h.values.cwiseAbs().maxCoeff();
  const bool ok = rest.violations() == 0 && nu_min >= 1.0 && peak <= 2.0 * initial + 1e-8;
  return {ok, std::to_string(rest.entries.size()) + " points, " + std::to_string(rest.violations()) +
                  " violations, " + fmt("min nu %.6f, ", nu_min) + fmt("max |xi|/|xi0| %.3f; ", ratio_max) +
                  fmt("long run peak/initial %.3f", peak / initial)};
}

Outcome residuals() {
  const auto worst = [](int id, const SpaceTimeFn& f) {
    std::mt19937 rng(static_cast<unsigned>(id));
    std::uniform_real_distribution<double> ux(0.0, 1.0), ut(0.0, 1.0);
    double w = 0.0;
    for (int k = 0; k < 100; ++k) w = std::max(w, std::abs(oracle::benchmark_residual(id, 1.5, f, ux(rng), ut(rng))));
    return w;
  };
  const double r1 = worst(1, builtin_example(1, 1.5).source);
  const double r2 = worst(2, builtin_example(2, 1.5).source);
  const double r3 = worst(3, builtin_example(3, 1.5).source);
  const double printed = worst(3, printed_example3_source(FractionalOrder(1.5)));
  return {r1 <= 1e-10 && r2 <= 1e-10 && r3 <= 1e-10 && printed > 1e-2,
          fmt("example 1 %.1e, ", r1) + fmt("example 2 %.1e, ", r2) + fmt("example 3 regenerated %.1e, ", r3) +
              fmt("printed example 3 source %.2e", printed)};
}

}  // namespace

int main() {
  criterion(1, "discrete Caputo exactness on t^2", 1, caputo_exactness);
  criterion(2, "weight laws", 1, weight_laws);
  criterion(3, "basis consistency", 1, basis_consistency);
  criterion(4, "linear-algebra oracle", 5, linear_algebra);
  criterion(5, "benchmark accuracy", 30, benchmark_accuracy);
  criterion(6, "self-convergence", 60, self_convergence);
  criterion(7, "stability sweep and long-run boundedness", 60, stability);
  criterion(8, "manufactured-solution residuals", 1, residuals);
  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
