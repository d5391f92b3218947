#include "tbfrac/fractime.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbfrac {

FractionalOrder::FractionalOrder(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0 && gamma <= 2.0))
    throw std::domain_error("fractional order must lie in (1, 2], got " + std::to_string(gamma));
}

double gamma_function(double x) { return std::tgamma(x); }

CaputoWeights caputo_weights(FractionalOrder gamma, double dt, std::size_t n_max) {
  if (!(dt > 0.0)) throw std::domain_error("caputo_weights: dt must be positive");
  const double e = 2.0 - gamma.value();
  std::vector<double> b(n_max + 1);
  b[0] = 1.0;
  if (e == 0.0) {
    // gamma = 2: (j+1)^0 - j^0 vanishes for every j >= 1.
    for (std::size_t j = 1; j <= n_max; ++j) b[j] = 0.0;
  } else {
    // j^e ((1 + 1/j)^e - 1) avoids cancellation for large j.
    for (std::size_t j = 1; j <= n_max; ++j) {
      const double jd = static_cast<double>(j);
      b[j] = std::pow(jd, e) * std::expm1(e * std::log1p(1.0 / jd));
    }
  }
  const double alpha0 = 1.0 / (std::pow(dt, gamma.value()) * gamma_function(3.0 - gamma.value()));
  return CaputoWeights{gamma, dt, std::move(b), alpha0};
}

Eigen::VectorXd discrete_caputo(std::span<const Eigen::VectorXd> history, const CaputoWeights& w) {
  if (history.size() < 3)
    throw std::invalid_argument("discrete_caputo: need at least the levels u^{-1}, u^0, u^1");
  const std::size_t n = history.size() - 3;
  if (w.b.size() < n + 1)
    throw std::invalid_argument("discrete_caputo: weights shorter than the history");
  const Eigen::Index len = history.front().size();
  for (const auto& u : history)
    if (u.size() != len) throw std::invalid_argument("discrete_caputo: snapshot length mismatch");

  // Level m is stored at history[m + 1].
  const auto level = [&](std::size_t m_plus_1) -> const Eigen::VectorXd& { return history[m_plus_1]; };
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(len);
  for (std::size_t j = 0; j <= n; ++j) {
    if (w.b[j] == 0.0) continue;
    acc += w.b[j] * (level(n + 2 - j) - 2.0 * level(n + 1 - j) + level(n - j));
  }
  return w.alpha0 * acc;
}

}  // namespace tbfrac
