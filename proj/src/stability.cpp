#include "tbfrac/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "tbfrac/basis.hpp"

namespace tbfrac {

double amplification_nu(double beta, double h, double dt, FractionalOrder gamma, double alpha) {
  if (!(dt > 0.0)) throw std::domain_error("amplification_nu: dt must be positive");
  if (alpha < 0.0) throw std::domain_error("amplification_nu: alpha must be non-negative");
  const Stencil s = stencil_coefficients(h);
  const double alpha0 = caputo_weights(gamma, dt, 0).alpha0;
  const double c = std::cos(beta * h);
  const double value_symbol = 2.0 * s.a1 * c + s.a2;
  if (std::abs(value_symbol) < 1e-14) throw std::domain_error("amplification_nu: degenerate value-stencil symbol");
  const double curvature_symbol = 2.0 * s.a4 * c + s.a5;
  return ((alpha0 + alpha) * value_symbol - curvature_symbol) / (alpha0 * value_symbol);
}

double StabilityTrace::max_ratio() const {
  if (xi.empty()) return 0.0;
  const double x0 = std::abs(xi.front());
  double m = 0.0;
  for (double v : xi) m = std::max(m, std::abs(v));
  return x0 == 0.0 ? (m == 0.0 ? 0.0 : INFINITY) : m / x0;
}

StabilityTrace xi_sequence(double nu, const CaputoWeights& weights, std::size_t n_max, double xi0, XiStart start) {
  if (!(nu >= 1.0)) throw std::domain_error("xi_sequence: nu must be >= 1");
  if (n_max < 1) throw std::domain_error("xi_sequence: n_max must be >= 1");
  if (weights.b.size() < n_max) throw std::invalid_argument("xi_sequence: weights too short");

  StabilityTrace trace;
  trace.nu = nu;
  trace.params.gamma = weights.gamma.value();
  trace.params.dt = weights.dt;
  trace.xi.resize(n_max + 1);
  auto& xi = trace.xi;
  xi[0] = xi0;
  double xi_minus1 = 0.0;
  if (start == XiStart::kAtRest) {
    xi[1] = 2.0 * xi0 / (nu + 1.0);
    xi_minus1 = xi[1];
  } else {
    xi[1] = 2.0 / nu * xi0;
  }
  // Level m >= -1.
  const auto at = [&](std::ptrdiff_t m) { return m < 0 ? xi_minus1 : xi[static_cast<std::size_t>(m)]; };

  for (std::size_t n = 1; n < n_max; ++n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    double memory = 0.0;
    for (std::ptrdiff_t k = 1; k <= sn; ++k) {
      const double bk = weights.b[static_cast<std::size_t>(k)];
      if (bk != 0.0) memory += bk * (at(sn + 1 - k) - 2.0 * at(sn - k) + at(sn - 1 - k));
    }
    xi[n + 1] = (2.0 * xi[n] - at(sn - 1) - memory) / nu;
  }
  const double limit = 2.0 * std::abs(xi0);
  trace.bound_ok = std::all_of(xi.begin(), xi.end(), [limit](double v) { return std::abs(v) <= limit; });
  return trace;
}

StabilityTrace stability_trace(const StabilityParams& params, std::size_t n_max, double xi0, XiStart start) {
  const FractionalOrder gamma(params.gamma);
  const double nu = amplification_nu(params.beta, params.h, params.dt, gamma, params.alpha);
  StabilityTrace trace = xi_sequence(nu, caputo_weights(gamma, params.dt, n_max), n_max, xi0, start);
  trace.params = params;
  return trace;
}

SweepRanges default_sweep() {
  SweepRanges r;
  r.gamma = {1.1, 1.5, 1.9};
  r.h = {1.0 / 10.0, 1.0 / 80.0};
  r.dt = {1.0 / 10.0, 1.0 / 100.0};
  r.alpha = {0.0, 1.0};
  for (int k = 0; k <= 8; ++k) r.beta_h.push_back(k * std::numbers::pi / 8.0);
  return r;
}

std::size_t ScanReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const ScanEntry& e) { return e.violation() && !e.gamma2_corner; }));
}

std::size_t ScanReport::corner_violations() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const ScanEntry& e) { return e.violation() && e.gamma2_corner; }));
}

ScanReport empirical_stability_scan(const SweepRanges& ranges, unsigned threads) {
  ScanReport report;
  for (double g : ranges.gamma)
    for (double h : ranges.h)
      for (double dt : ranges.dt)
        for (double alpha : ranges.alpha)
          for (double bh : ranges.beta_h) {
            ScanEntry e;
            e.params = {g, h, dt, alpha, bh / h};
            e.beta_h = bh;
            e.gamma2_corner = g == 2.0;
            report.entries.push_back(e);
          }
  if (report.entries.empty()) return report;

  const auto evaluate = [&](ScanEntry& e) {
    const StabilityTrace trace = stability_trace(e.params, ranges.n_max, ranges.xi0, ranges.start);
    e.nu = trace.nu;
    e.nu_ok = trace.nu >= 1.0;
    e.bound_ok = trace.bound_ok;
    e.max_ratio = trace.max_ratio();
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, report.entries.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t i = next++; i < report.entries.size(); i = next++) {
      if (failed) return;
      try {
        evaluate(report.entries[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace tbfrac
