#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// production path it is compared against.

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tbfrac/basis.hpp"
#include "tbfrac/problem.hpp"
#include "tbfrac/tridiagonal.hpp"

namespace oracle {

/// Lanczos approximation (g = 7, 9 terms) with reflection for x < 1/2.
inline double lanczos_gamma(double x) {
  constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                       771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                       -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[static_cast<std::size_t>(i)] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

/// Stencil constants through half-angle identities instead of the printed forms:
///   a1 = tan(h/2) / (2 sin(3h/2)),  a2 = 2 sin(h/2) / sin(3h/2),
///   a3 = 3 / (4 sin(3h/2)),         a4 = (3 + 9 cos h) / (8 sin(3h/2) sin h),
///   a5 = -3 cos^2(h/2) / (2 sin(h/2) sin(3h/2)).
template <typename T>
tbfrac::StencilCoefficients<T> stencil_half_angle(T h) {
  using std::cos;
  using std::sin;
  using std::tan;
  const T s1 = sin(h / 2), s3 = sin(3 * h / 2), c1 = cos(h / 2);
  return {tan(h / 2) / (2 * s3), 2 * s1 / s3, T(3) / (4 * s3), (3 + 9 * cos(h)) / (8 * s3 * sin(h)),
          -3 * c1 * c1 / (2 * s1 * s3)};
}

inline Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return a.fullPivLu().solve(b);
}

/// Dense copy of a tridiagonal system, built independently of to_dense().
inline Eigen::MatrixXd dense_from_bands(const tbfrac::TridiagonalSystem& s) {
  const Eigen::Index n = s.diag.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = s.diag(i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = s.super(i);
    m(i + 1, i) = s.sub(i);
  }
  return m;
}

/// Full (N+3) x (N+3) initial-fit matrix with slope rows at both ends,
/// unknowns c_{-1}..c_{N+1}.
inline Eigen::VectorXd dense_initial_fit(const tbfrac::InitialProfile& g, const tbfrac::Grid& grid,
                                         const tbfrac::Stencil& s) {
  const int n = grid.intervals();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 3, n + 3);
  Eigen::VectorXd rhs(n + 3);
  a(0, 0) = -s.a3;
  a(0, 2) = s.a3;
  rhs(0) = g.slope(grid.a());
  for (int j = 0; j <= n; ++j) {
    a(j + 1, j) = s.a1;
    a(j + 1, j + 1) = s.a2;
    a(j + 1, j + 2) = s.a1;
    rhs(j + 1) = g.value(grid.a() + j * grid.h());
  }
  a(n + 2, n) = -s.a3;
  a(n + 2, n + 2) = s.a3;
  rhs(n + 2) = g.slope(grid.b());
  return dense_solve(a, rhs);
}

/// Full (N+3) system of one time step: collocation rows lead/centre/lead
/// with right-hand side `rhs` (N+1 entries) plus the two Dirichlet rows.
inline Eigen::VectorXd dense_step(double lead, double centre, const Eigen::VectorXd& rhs, double left, double right,
                                  const tbfrac::Stencil& s) {
  const Eigen::Index n = rhs.size() - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 3, n + 3);
  Eigen::VectorXd b(n + 3);
  a(0, 0) = s.a1;
  a(0, 1) = s.a2;
  a(0, 2) = s.a1;
  b(0) = left;
  for (Eigen::Index j = 0; j <= n; ++j) {
    a(j + 1, j) = lead;
    a(j + 1, j + 1) = centre;
    a(j + 1, j + 2) = lead;
    b(j + 1) = rhs(j);
  }
  a(n + 2, n) = s.a1;
  a(n + 2, n + 1) = s.a2;
  a(n + 2, n + 2) = s.a1;
  b(n + 2) = right;
  return dense_solve(a, b);
}

/// Analytic Caputo derivatives of t and t^2 for 1 < gamma <= 2.
inline double caputo_t(double) { return 0.0; }
inline double caputo_t2(double gamma, double t) { return 2.0 * std::pow(t, 2.0 - gamma) / lanczos_gamma(3.0 - gamma); }

/// D^gamma u + alpha u - u_xx - f for the three benchmark solutions, with
/// every derivative written out by hand.
inline double benchmark_residual(int id, double gamma, const tbfrac::SpaceTimeFn& f, double x, double t) {
  constexpr double pi = std::numbers::pi;
  switch (id) {
    case 1: {  // u = (t^2 - t) sin(pi x), alpha = 0
      const double s = std::sin(pi * x);
      const double caputo = (caputo_t2(gamma, t) - caputo_t(t)) * s;
      const double uxx = -(t * t - t) * pi * pi * s;
      return caputo - uxx - f(x, t);
    }
    case 2: {  // u = t^2 x (1 - x), alpha = 1
      const double g = x * (1.0 - x);
      return caputo_t2(gamma, t) * g + t * t * g - (-2.0 * t * t) - f(x, t);
    }
    case 3: {  // u = t^2 sinh(x), alpha = 1
      const double s = std::sinh(x);
      return caputo_t2(gamma, t) * s + t * t * s - t * t * s - f(x, t);
    }
    default:
      return NAN;
  }
}

}  // namespace oracle
