#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tbfrac {

/// Caputo order gamma restricted to the diffusion-wave range (1, 2].
class FractionalOrder {
 public:
  explicit FractionalOrder(double gamma);
  double value() const { return gamma_; }

 private:
  double gamma_;
};

/// Gamma function. Backed by std::tgamma.
double gamma_function(double x);

/// Convolution weights b_j = (j+1)^{2-gamma} - j^{2-gamma}, j = 0..n_max,
/// and scale alpha0 = 1 / (dt^gamma Gamma(3-gamma)) of the L1-type
/// second-order Caputo quadrature.
struct CaputoWeights {
  FractionalOrder gamma;
  double dt;
  std::vector<double> b;
  double alpha0;
};

CaputoWeights caputo_weights(FractionalOrder gamma, double dt, std::size_t n_max);

/// alpha0 * sum_{j=0}^{n} b_j (u^{n+1-j} - 2 u^{n-j} + u^{n-1-j}), pointwise.
///
/// `history` holds the snapshots u^{-1}, u^0, ..., u^{n+1} in that order
/// (n + 3 entries); the u^{-1} level is the caller's responsibility.
Eigen::VectorXd discrete_caputo(std::span<const Eigen::VectorXd> history, const CaputoWeights& w);

}  // namespace tbfrac
