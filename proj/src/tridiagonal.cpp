#include "tbfrac/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tbfrac {

void TridiagonalSystem::check_shape() const {
  const Eigen::Index n = diag.size();
  if (n == 0) throw std::invalid_argument("tridiagonal system is empty");
  if (sub.size() != n - 1 || super.size() != n - 1 || rhs.size() != n)
    throw std::invalid_argument("tridiagonal system has inconsistent band lengths");
}

Eigen::MatrixXd TridiagonalSystem::to_dense() const {
  check_shape();
  const Eigen::Index n = size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t(k, k) = diag(k);
    if (k + 1 < n) {
      t(k, k + 1) = super(k);
      t(k + 1, k) = sub(k);
    }
  }
  return t;
}

Eigen::VectorXd TridiagonalSystem::apply(const Eigen::VectorXd& x) const {
  check_shape();
  const Eigen::Index n = size();
  Eigen::VectorXd y = diag.cwiseProduct(x);
  if (n > 1) {
    y.head(n - 1) += super.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += sub.cwiseProduct(x.head(n - 1));
  }
  return y;
}

SingularPivotError::SingularPivotError(Eigen::Index row, double pivot)
    : std::runtime_error("singular pivot " + std::to_string(pivot) + " in tridiagonal row " +
                         std::to_string(row)),
      row_(row) {}

Eigen::VectorXd thomas_solve(const TridiagonalSystem& sys) {
  sys.check_shape();
  const Eigen::Index n = sys.size();
  Eigen::VectorXd c_prime(n);  // modified super-diagonal
  Eigen::VectorXd d_prime(n);  // modified right-hand side

  const auto row_scale = [&](Eigen::Index k) {
    double s = std::abs(sys.diag(k));
    if (k > 0) s = std::max(s, std::abs(sys.sub(k - 1)));
    if (k + 1 < n) s = std::max(s, std::abs(sys.super(k)));
    return s;
  };

  for (Eigen::Index k = 0; k < n; ++k) {
    const double lower = k > 0 ? sys.sub(k - 1) : 0.0;
    const double pivot = sys.diag(k) - (k > 0 ? lower * c_prime(k - 1) : 0.0);
    if (!(std::abs(pivot) >= 1e-14 * row_scale(k)) || pivot == 0.0) throw SingularPivotError(k, pivot);
    c_prime(k) = k + 1 < n ? sys.super(k) / pivot : 0.0;
    d_prime(k) = (sys.rhs(k) - (k > 0 ? lower * d_prime(k - 1) : 0.0)) / pivot;
  }

  Eigen::VectorXd x(n);
  x(n - 1) = d_prime(n - 1);
  for (Eigen::Index k = n - 2; k >= 0; --k) x(k) = d_prime(k) - c_prime(k) * x(k + 1);
  return x;
}

}  // namespace tbfrac
