#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tbfrac/basis.hpp"
#include "tbfrac/fractime.hpp"
#include "tbfrac/jet.hpp"

namespace tbfrac {

using SpaceFn = std::function<double(double)>;
using TimeFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

/// Initial datum together with its x-derivative (the slope is needed at the
/// two boundary knots when fitting spline coefficients).
struct InitialProfile {
  SpaceFn value;
  SpaceFn slope;
};

/// D_t^gamma u + alpha u = u_xx + f on [a, b] x [0, T], with
/// u(x,0) = phi1, u_t(x,0) = phi2, u(a,t) = psi1, u(b,t) = psi2.
struct ProblemSpec {
  std::string name;
  FractionalOrder gamma{1.5};
  double alpha = 0.0;
  double a = 0.0;
  double b = 1.0;
  double horizon = 1.0;
  InitialProfile phi1;
  InitialProfile phi2;
  TimeFn psi1;
  TimeFn psi2;
  SpaceTimeFn source;
  std::optional<SpaceTimeFn> exact;

  /// Throws std::invalid_argument if the corner compatibility or the exact
  /// solution's initial/boundary traces disagree with the data.
  void validate() const;
};

class UnsupportedExponentError : public std::invalid_argument {
 public:
  explicit UnsupportedExponentError(double p);
};

/// Caputo derivative of t^p for 1 < gamma <= 2: zero for p in {0, 1},
/// Gamma(p+1)/Gamma(p+1-gamma) t^{p-gamma} for p >= 2.
double caputo_of_monomial(double p, FractionalOrder gamma, double t);

/// Spatial factor g(x) returning g, g', g''.
using SpatialProfile = std::function<Jet<double>(double)>;

struct SeparableTerm {
  double power;
  SpatialProfile profile;
};

/// u(x, t) = sum_k t^{p_k} g_k(x).
struct SeparableSolution {
  std::vector<SeparableTerm> terms;

  double value(double x, double t) const;
  /// u_t(x, 0).
  double initial_velocity(double x) const;
  double initial_velocity_slope(double x) const;
  double initial_value(double x) const;
  double initial_slope(double x) const;
  double curvature(double x, double t) const;
  double caputo(double x, double t, FractionalOrder gamma) const;
};

/// f = D_t^gamma u + alpha u - u_xx for a separable u, using the analytic
/// Caputo rule for time monomials.
SpaceTimeFn manufactured_source(const SeparableSolution& u, double alpha, FractionalOrder gamma);

/// Problem whose data are all traces of the separable solution `u`.
ProblemSpec manufactured_problem(std::string name, const SeparableSolution& u, double alpha,
                                 FractionalOrder gamma, double a, double b, double horizon);

/// Benchmark problems on [0, 1] x [0, 1]:
///   1. alpha = 0, u = (t^2 - t) sin(pi x)
///   2. alpha = 1, u = t^2 x (1 - x)
///   3. alpha = 1, u = t^2 sinh(x)  (source regenerated from u)
ProblemSpec builtin_example(int id, std::optional<double> gamma = std::nullopt);
SeparableSolution builtin_solution(int id);
double builtin_default_gamma(int id);
std::string builtin_description(int id);
inline constexpr int kBuiltinCount = 3;

/// An alternative Example 3 source that circulates with the benchmark:
/// pi 2 sinh(x) t^{2-gamma}/Gamma(3-gamma) + (1 - pi) t^2 sinh(x).
/// It does not match u = t^2 sinh(x); kept for the residual demonstration.
SpaceTimeFn printed_example3_source(FractionalOrder gamma);

/// Residual D_t^gamma u + alpha u - u_xx - f at (x, t).
double pde_residual(const SeparableSolution& u, double alpha, FractionalOrder gamma,
                    const SpaceTimeFn& source, double x, double t);

struct ErrorReport {
  double l2 = 0.0;
  double linf = 0.0;
  double time = 0.0;
  int N = 0;
  int M = 0;
};

/// linf = max_j |e_j|, l2 = sqrt(h sum_j e_j^2) over the knots j = 0..N.
ErrorReport error_norms(const Eigen::VectorXd& numeric, const SpaceTimeFn& exact, const Grid& grid,
                        double t, int M = 0);

}  // namespace tbfrac
