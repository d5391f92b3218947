#pragma once

// Cubic trigonometric B-spline basis on a uniform grid.
//
// TB_i(x) has support [x_i, x_{i+4}] and is built from the four pieces
//
//   w·TB_i = p_i^3                                           on [x_i,     x_{i+1}]
//          = p_i (p_i q_{i+2} + q_{i+3} p_{i+1}) + q_{i+4} p_{i+1}^2
//                                                            on [x_{i+1}, x_{i+2}]
//          = q_{i+4} (p_{i+1} q_{i+3} + q_{i+4} p_{i+2}) + p_i q_{i+3}^2
//                                                            on [x_{i+2}, x_{i+3}]
//          = q_{i+4}^3                                       on [x_{i+3}, x_{i+4}]
//
// with p_k = sin((x - x_k)/2), q_k = sin((x_k - x)/2) and
// w = sin(h/2) sin(h) sin(3h/2). Knots beyond [a, b] continue the uniform
// spacing, so ghost basis functions need no special casing.
//
// Spline coefficients are stored with logical indices -1..N+1. Coefficient
// c_j multiplies the basis function centred on x_j, i.e. TB_{j-2}.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "tbfrac/jet.hpp"

namespace tbfrac {

template <typename Scalar = double>
class SpatialGrid {
 public:
  SpatialGrid(Scalar a, Scalar b, int n) : a_(a), b_(b), n_(n), h_((b - a) / Scalar(n)) {
    if (!(a < b)) throw std::domain_error("SpatialGrid: need a < b");
    if (n < 3) throw std::domain_error("SpatialGrid: need N >= 3, got " + std::to_string(n));
    if (!(h_ > Scalar(0)) || !(h_ < Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(3)))
      throw std::domain_error("SpatialGrid: mesh width must lie in (0, 2*pi/3)");
  }

  Scalar a() const { return a_; }
  Scalar b() const { return b_; }
  int intervals() const { return n_; }
  Scalar h() const { return h_; }

  /// x_k = a + k h for any integer k (ghost knots included).
  Scalar knot(std::int64_t k) const {
    if (k == n_) return b_;
    return a_ + Scalar(k) * h_;
  }

  /// Index m of the cell [x_m, x_{m+1}] containing x. Values within a few
  /// ulps of a knot snap to it; x = b maps to the last cell.
  std::int64_t cell(Scalar x) const {
    using std::floor;
    using std::round;
    const Scalar r = (x - a_) / h_;
    const Scalar nearest = round(r);
    using std::abs;
    if (abs(r - nearest) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (Scalar(1) + abs(nearest))) {
      const auto m = static_cast<std::int64_t>(nearest);
      return m == n_ ? m - 1 : m;
    }
    return static_cast<std::int64_t>(floor(r));
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> knots() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n_ + 1);
    for (int k = 0; k <= n_; ++k) x(k) = knot(k);
    return x;
  }

 private:
  Scalar a_;
  Scalar b_;
  int n_;
  Scalar h_;
};

using Grid = SpatialGrid<double>;

/// Knot values of a basis function and its derivatives:
///   value    (a1, a2, a1)
///   slope    (-a3, 0, a3)
///   curvature (a4, a5, a4)
/// at the left, centre and right interior knots of its support.
template <typename Scalar = double>
struct StencilCoefficients {
  Scalar a1;
  Scalar a2;
  Scalar a3;
  Scalar a4;
  Scalar a5;
};

using Stencil = StencilCoefficients<double>;

template <typename Scalar = double>
StencilCoefficients<Scalar> stencil_coefficients(Scalar h) {
  using std::cos;
  using std::sin;
  using std::tan;
  if (!(h > Scalar(0)) || !(h < Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(3)))
    throw std::domain_error("stencil_coefficients: h must lie in (0, 2*pi/3)");
  const Scalar half = h / Scalar(2);
  const Scalar s_half = sin(half);
  const Scalar cot_half = Scalar(1) / tan(half);
  StencilCoefficients<Scalar> s;
  s.a1 = s_half * s_half / (sin(h) * sin(Scalar(3) * half));
  s.a2 = Scalar(2) / (Scalar(1) + Scalar(2) * cos(h));
  s.a3 = Scalar(3) / (Scalar(4) * sin(Scalar(3) * half));
  s.a4 = (Scalar(3) + Scalar(9) * cos(h)) / (Scalar(4) * cos(half) - Scalar(4) * cos(Scalar(5) * half));
  s.a5 = -Scalar(3) * cot_half * cot_half / (Scalar(2) + Scalar(4) * cos(h));
  return s;
}

namespace detail {

/// Jet of piece `piece` (0..3) of TB_i at x, evaluated analytically even
/// outside that piece's own interval.
template <typename Scalar>
Jet<Scalar> basis_piece(std::int64_t i, int piece, Scalar x, const SpatialGrid<Scalar>& grid) {
  using std::sin;
  const Scalar h = grid.h();
  // Local coordinate measured from x_i keeps the sine arguments small.
  const Scalar u = x - grid.knot(i);
  // d/dx of (u - k h)/2 is 1/2.
  const auto arg = [&](int k) { return Jet<Scalar>{(u - Scalar(k) * h) / Scalar(2), Scalar(0.5), Scalar(0)}; };
  const auto pk = [&](int k) { return sin(arg(k)); };
  const auto qk = [&](int k) { return -sin(arg(k)); };

  const Scalar w = sin(h / Scalar(2)) * sin(h) * sin(Scalar(3) * h / Scalar(2));
  Jet<Scalar> r;
  switch (piece) {
    case 0: {
      const auto p0 = pk(0);
      r = p0 * p0 * p0;
      break;
    }
    case 1: {
      const auto p0 = pk(0), p1 = pk(1);
      r = p0 * (p0 * qk(2) + qk(3) * p1) + qk(4) * p1 * p1;
      break;
    }
    case 2: {
      const auto q3 = qk(3), q4 = qk(4);
      r = q4 * (pk(1) * q3 + q4 * pk(2)) + pk(0) * q3 * q3;
      break;
    }
    case 3: {
      const auto q4 = qk(4);
      r = q4 * q4 * q4;
      break;
    }
    default:
      return Jet<Scalar>{};
  }
  return (Scalar(1) / w) * r;
}

template <typename Scalar>
Jet<Scalar> basis_jet(std::int64_t i, Scalar x, const SpatialGrid<Scalar>& grid) {
  const std::int64_t piece = grid.cell(x) - i;
  if (piece < 0 || piece > 3) return Jet<Scalar>{};
  return basis_piece(i, static_cast<int>(piece), x, grid);
}

inline void check_order(int order, int max_order) {
  if (order < 0 || order > max_order)
    throw std::invalid_argument("derivative order must lie in [0, " + std::to_string(max_order) + "]");
}

template <typename Scalar>
Scalar select(const Jet<Scalar>& j, int order) {
  return order == 0 ? j.v : (order == 1 ? j.d1 : j.d2);
}

}  // namespace detail

/// TB_i(x). Exactly zero outside [x_i, x_{i+4}].
template <typename Scalar>
Scalar eval_basis(std::int64_t i, Scalar x, const SpatialGrid<Scalar>& grid) {
  return detail::basis_jet(i, x, grid).v;
}

/// First or second derivative of TB_i at x. At a junction knot the value is
/// the (common) limit from the right-hand piece.
template <typename Scalar>
Scalar eval_basis_derivative(std::int64_t i, Scalar x, const SpatialGrid<Scalar>& grid, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("eval_basis_derivative: order must be 1 or 2");
  return detail::select(detail::basis_jet(i, x, grid), order);
}

/// Value (order 0) or derivative of sum_j c_j TB_{j-2}(x), where c holds
/// N+3 entries for logical indices -1..N+1.
template <typename Scalar, typename Derived>
Scalar eval_spline(const Eigen::MatrixBase<Derived>& c, Scalar x, const SpatialGrid<Scalar>& grid,
                   int order = 0) {
  detail::check_order(order, 2);
  if (c.size() != grid.intervals() + 3)
    throw std::invalid_argument("eval_spline: coefficient vector must have N+3 entries");
  const std::int64_t m = grid.cell(x);
  Scalar sum(0);
  // Basis functions centred on x_{m-1}..x_{m+2} overlap the cell [x_m, x_{m+1}].
  for (std::int64_t j = m - 1; j <= m + 2; ++j) {
    if (j < -1 || j > grid.intervals() + 1) continue;
    const auto piece = static_cast<int>(m - (j - 2));
    const auto jet = detail::basis_piece(j - 2, piece, x, grid);
    sum += Scalar(c(static_cast<Eigen::Index>(j + 1))) * detail::select(jet, order);
  }
  return sum;
}

/// Knot values u_j = a1 c_{j-1} + a2 c_j + a1 c_{j+1}, j = 0..N.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> knot_values(const Eigen::MatrixBase<Derived>& c,
                                                     const StencilCoefficients<Scalar>& s) {
  const Eigen::Index n = c.size() - 3;
  return s.a1 * (c.head(n + 1) + c.tail(n + 1)) + s.a2 * c.segment(1, n + 1);
}

/// Knot second derivatives a4 c_{j-1} + a5 c_j + a4 c_{j+1}, j = 0..N.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> knot_curvatures(const Eigen::MatrixBase<Derived>& c,
                                                         const StencilCoefficients<Scalar>& s) {
  const Eigen::Index n = c.size() - 3;
  return s.a4 * (c.head(n + 1) + c.tail(n + 1)) + s.a5 * c.segment(1, n + 1);
}

}  // namespace tbfrac
