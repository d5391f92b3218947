#pragma once

#include <cstddef>
#include <vector>

#include "tbfrac/fractime.hpp"

namespace tbfrac {

/// How the growth-factor recursion is started.
enum class XiStart {
  /// Zero initial velocity: xi_{-1} = xi_1, so xi_1 = 2 xi_0 / (nu + 1).
  /// This is what the collocation scheme's first step does to a Fourier mode.
  kAtRest,
  /// xi_{-1} = 0, so xi_1 = (2 / nu) xi_0: the mode starts with a unit
  /// kick. Low-frequency modes then grow almost linearly.
  kImpulse,
};

/// Parameters of one Fourier mode exp(i beta x) of the scheme.
struct StabilityParams {
  double gamma = 1.5;
  double h = 0.1;
  double dt = 0.01;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Growth factor denominator
///   nu = [(alpha0 + alpha)(2 a1 cos(beta h) + a2) - (2 a4 cos(beta h) + a5)]
///        / [alpha0 (2 a1 cos(beta h) + a2)].
/// Throws std::domain_error when the value-stencil symbol 2 a1 cos + a2 is
/// below 1e-14 in magnitude.
double amplification_nu(double beta, double h, double dt, FractionalOrder gamma, double alpha);

struct StabilityTrace {
  double nu = 1.0;
  std::vector<double> xi;
  /// |xi_k| <= 2 |xi_0| for every k.
  bool bound_ok = true;
  StabilityParams params;

  double max_ratio() const;
};

/// xi_{n+1} = (2 xi_n - xi_{n-1} - sum_{k=1}^{n} b_k (xi_{n+1-k} - 2 xi_{n-k} + xi_{n-1-k})) / nu
/// for n = 0..n_max-1, started according to `start`.
StabilityTrace xi_sequence(double nu, const CaputoWeights& weights, std::size_t n_max, double xi0,
                           XiStart start = XiStart::kAtRest);

/// amplification_nu + xi_sequence for one parameter point.
StabilityTrace stability_trace(const StabilityParams& params, std::size_t n_max, double xi0,
                               XiStart start = XiStart::kAtRest);

/// Cartesian sweep. beta_h lists the products beta * h.
struct SweepRanges {
  std::vector<double> gamma;
  std::vector<double> h;
  std::vector<double> dt;
  std::vector<double> alpha;
  std::vector<double> beta_h;
  std::size_t n_max = 500;
  double xi0 = 1.0;
  XiStart start = XiStart::kAtRest;
};

/// The default grid: gamma {1.1, 1.5, 1.9}, h {1/10, 1/80}, dt {1/10, 1/100},
/// alpha {0, 1}, beta h = k pi / 8 for k = 0..8.
SweepRanges default_sweep();

struct ScanEntry {
  StabilityParams params;
  double beta_h = 0.0;
  double nu = 1.0;
  double max_ratio = 0.0;
  bool nu_ok = true;
  bool bound_ok = true;
  /// gamma == 2, where bounded growth is not expected from the impulse start.
  bool gamma2_corner = false;

  bool violation() const { return !nu_ok || !bound_ok; }
};

struct ScanReport {
  /// Ordered by (gamma, h, dt, alpha, beta_h) in the order given.
  std::vector<ScanEntry> entries;

  std::size_t violations() const;
  std::size_t corner_violations() const;
};

/// Evaluates every sweep point; points run on up to `threads` workers
/// (0 = hardware concurrency). The report order does not depend on it.
ScanReport empirical_stability_scan(const SweepRanges& ranges, unsigned threads = 0);

}  // namespace tbfrac
