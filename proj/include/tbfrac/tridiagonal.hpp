#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace tbfrac {

/// Square tridiagonal system T x = rhs. sub(k) is T(k+1, k) and super(k) is
/// T(k, k+1), so both are one entry shorter than diag.
struct TridiagonalSystem {
  Eigen::VectorXd sub;
  Eigen::VectorXd diag;
  Eigen::VectorXd super;
  Eigen::VectorXd rhs;

  Eigen::Index size() const { return diag.size(); }
  void check_shape() const;
  Eigen::MatrixXd to_dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

class SingularPivotError : public std::runtime_error {
 public:
  SingularPivotError(Eigen::Index row, double pivot);
  Eigen::Index row() const { return row_; }

 private:
  Eigen::Index row_;
};

/// Thomas algorithm (no pivoting). Throws SingularPivotError when an
/// eliminated pivot is below 1e-14 times the magnitude of its row.
Eigen::VectorXd thomas_solve(const TridiagonalSystem& sys);

}  // namespace tbfrac
