#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tbfrac/tridiagonal.hpp"

using namespace tbfrac;

namespace {

TridiagonalSystem random_dominant(Eigen::Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TridiagonalSystem s;
  s.sub.resize(n - 1);
  s.super.resize(n - 1);
  s.diag.resize(n);
  s.rhs.resize(n);
  for (auto& v : s.sub) v = u(rng);
  for (auto& v : s.super) v = u(rng);
  for (auto& v : s.rhs) v = 10.0 * u(rng);
  for (Eigen::Index i = 0; i < n; ++i) s.diag(i) = (u(rng) < 0 ? -1.0 : 1.0) * (2.5 + u(rng));
  return s;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  TridiagonalSystem s{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Ones(5), Eigen::VectorXd::Zero(4),
                      Eigen::VectorXd::LinSpaced(5, -2.0, 2.0)};
  CHECK(thomas_solve(s) == s.rhs);
}

TEST_CASE("random diagonally dominant 50x50 systems match the dense oracle") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const TridiagonalSystem s = random_dominant(50, rng);
    const Eigen::VectorXd x = thomas_solve(s);
    const Eigen::VectorXd ref = oracle::dense_solve(oracle::dense_from_bands(s), s.rhs);
    CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    CHECK((s.apply(x) - s.rhs).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + s.rhs.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("dense copy and apply agree with the band layout") {
  std::mt19937 rng(5);
  const TridiagonalSystem s = random_dominant(9, rng);
  CHECK(s.to_dense() == oracle::dense_from_bands(s));
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(9, 1.0, 9.0);
  CHECK((s.apply(x) - s.to_dense() * x).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("one-by-one system") {
  TridiagonalSystem s{Eigen::VectorXd(0), Eigen::VectorXd::Constant(1, 4.0), Eigen::VectorXd(0),
                      Eigen::VectorXd::Constant(1, 2.0)};
  CHECK(thomas_solve(s)(0) == 0.5);
}

TEST_CASE("zero pivot is reported") {
  TridiagonalSystem s{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(2),
                      Eigen::VectorXd::Ones(3)};
  s.diag(0) = 0.0;
  try {
    (void)thomas_solve(s);
    FAIL("expected SingularPivotError");
  } catch (const SingularPivotError& e) {
    CHECK(e.row() == 0);
  }

  // Pivot cancels during elimination: [[1, 1], [1, 1]].
  TridiagonalSystem t{Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(1),
                      Eigen::VectorXd::Ones(2)};
  CHECK_THROWS_AS(thomas_solve(t), SingularPivotError);
}

TEST_CASE("inconsistent shapes are rejected") {
  TridiagonalSystem s{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(2),
                      Eigen::VectorXd::Ones(3)};
  CHECK_THROWS_AS(s.check_shape(), std::invalid_argument);
  CHECK_THROWS_AS(thomas_solve(s), std::invalid_argument);
}
