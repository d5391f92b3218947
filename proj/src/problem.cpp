#include "tbfrac/problem.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tbfrac {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_supported_power(double p) { return p == 0.0 || p == 1.0 || p >= 2.0; }

double time_power(double t, double p) { return p == 0.0 ? 1.0 : std::pow(t, p); }

}  // namespace

void ProblemSpec::validate() const {
  if (!(a < b)) throw std::invalid_argument(name + ": domain needs a < b");
  if (!(horizon > 0.0)) throw std::invalid_argument(name + ": horizon must be positive");
  if (alpha < 0.0) throw std::invalid_argument(name + ": reaction coefficient must be non-negative");
  if (!phi1.value || !phi1.slope || !phi2.value || !phi2.slope || !psi1 || !psi2 || !source)
    throw std::invalid_argument(name + ": incomplete problem data");
  if (std::abs(phi1.value(a) - psi1(0.0)) > 1e-12 || std::abs(phi1.value(b) - psi2(0.0)) > 1e-12)
    throw std::invalid_argument(name + ": initial and boundary data disagree at the corners");
  if (!exact) return;
  constexpr int kSamples = 16;
  for (int k = 0; k <= kSamples; ++k) {
    const double x = a + (b - a) * k / kSamples;
    const double t = horizon * k / kSamples;
    if (std::abs((*exact)(x, 0.0) - phi1.value(x)) > 1e-10)
      throw std::invalid_argument(name + ": exact solution does not match phi1");
    if (std::abs((*exact)(a, t) - psi1(t)) > 1e-10 || std::abs((*exact)(b, t) - psi2(t)) > 1e-10)
      throw std::invalid_argument(name + ": exact solution does not match the boundary data");
  }
}

UnsupportedExponentError::UnsupportedExponentError(double p)
    : std::invalid_argument([p] {
        std::ostringstream os;
        os << "time exponent " << p << " is not supported (need 0, 1 or >= 2)";
        return os.str();
      }()) {}

double caputo_of_monomial(double p, FractionalOrder gamma, double t) {
  if (!is_supported_power(p)) throw UnsupportedExponentError(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  const double g = gamma.value();
  return gamma_function(p + 1.0) / gamma_function(p + 1.0 - g) * time_power(t, p - g);
}

double SeparableSolution::value(double x, double t) const {
  double u = 0.0;
  for (const auto& term : terms) u += time_power(t, term.power) * term.profile(x).v;
  return u;
}

double SeparableSolution::initial_value(double x) const {
  double u = 0.0;
  for (const auto& term : terms)
    if (term.power == 0.0) u += term.profile(x).v;
  return u;
}

double SeparableSolution::initial_slope(double x) const {
  double u = 0.0;
  for (const auto& term : terms)
    if (term.power == 0.0) u += term.profile(x).d1;
  return u;
}

double SeparableSolution::initial_velocity(double x) const {
  double v = 0.0;
  for (const auto& term : terms)
    if (term.power == 1.0) v += term.profile(x).v;
  return v;
}

double SeparableSolution::initial_velocity_slope(double x) const {
  double v = 0.0;
  for (const auto& term : terms)
    if (term.power == 1.0) v += term.profile(x).d1;
  return v;
}

double SeparableSolution::curvature(double x, double t) const {
  double u = 0.0;
  for (const auto& term : terms) u += time_power(t, term.power) * term.profile(x).d2;
  return u;
}

double SeparableSolution::caputo(double x, double t, FractionalOrder gamma) const {
  double d = 0.0;
  for (const auto& term : terms) {
    const double c = caputo_of_monomial(term.power, gamma, t);
    if (c != 0.0) d += c * term.profile(x).v;
  }
  return d;
}

SpaceTimeFn manufactured_source(const SeparableSolution& u, double alpha, FractionalOrder gamma) {
  for (const auto& term : u.terms)
    if (!is_supported_power(term.power)) throw UnsupportedExponentError(term.power);
  return [u, alpha, gamma](double x, double t) {
    double f = 0.0;
    for (const auto& term : u.terms) {
      const Jet<double> g = term.profile(x);
      const double tp = time_power(t, term.power);
      f += caputo_of_monomial(term.power, gamma, t) * g.v + alpha * tp * g.v - tp * g.d2;
    }
    return f;
  };
}

ProblemSpec manufactured_problem(std::string name, const SeparableSolution& u, double alpha,
                                 FractionalOrder gamma, double a, double b, double horizon) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.gamma = gamma;
  spec.alpha = alpha;
  spec.a = a;
  spec.b = b;
  spec.horizon = horizon;
  spec.phi1 = {[u](double x) { return u.initial_value(x); }, [u](double x) { return u.initial_slope(x); }};
  spec.phi2 = {[u](double x) { return u.initial_velocity(x); },
               [u](double x) { return u.initial_velocity_slope(x); }};
  spec.psi1 = [u, a](double t) { return u.value(a, t); };
  spec.psi2 = [u, b](double t) { return u.value(b, t); };
  spec.source = manufactured_source(u, alpha, gamma);
  spec.exact = [u](double x, double t) { return u.value(x, t); };
  return spec;
}

SeparableSolution builtin_solution(int id) {
  using J = Jet<double>;
  switch (id) {
    case 1: {
      const SpatialProfile s = [](double x) { return sin(kPi * J::variable(x)); };
      const SpatialProfile minus_s = [](double x) { return -sin(kPi * J::variable(x)); };
      return {{{2.0, s}, {1.0, minus_s}}};
    }
    case 2: {
      const SpatialProfile g = [](double x) { return J{x * (1.0 - x), 1.0 - 2.0 * x, -2.0}; };
      return {{{2.0, g}}};
    }
    case 3: {
      const SpatialProfile g = [](double x) { return sinh(J::variable(x)); };
      return {{{2.0, g}}};
    }
    default:
      throw std::invalid_argument("unknown builtin example " + std::to_string(id));
  }
}

double builtin_default_gamma(int id) {
  switch (id) {
    case 1:
      return 1.75;
    case 2:
    case 3:
      return 1.5;
    default:
      throw std::invalid_argument("unknown builtin example " + std::to_string(id));
  }
}

std::string builtin_description(int id) {
  switch (id) {
    case 1:
      return "alpha=0, u=(t^2-t)sin(pi x), u_t(x,0)=-sin(pi x), homogeneous boundaries";
    case 2:
      return "alpha=1, u=t^2 x(1-x), zero initial data, homogeneous boundaries";
    case 3:
      return "alpha=1, u=t^2 sinh(x), u(1,t)=t^2 sinh(1), source regenerated from u";
    default:
      throw std::invalid_argument("unknown builtin example " + std::to_string(id));
  }
}

ProblemSpec builtin_example(int id, std::optional<double> gamma_override) {
  const FractionalOrder gamma(gamma_override.value_or(builtin_default_gamma(id)));
  const double g = gamma.value();
  const SeparableSolution u = builtin_solution(id);
  ProblemSpec spec;
  switch (id) {
    case 1: {
      spec.name = "example1";
      spec.alpha = 0.0;
      spec.phi1 = {[](double) { return 0.0; }, [](double) { return 0.0; }};
      spec.phi2 = {[](double x) { return -std::sin(kPi * x); }, [](double x) { return -kPi * std::cos(kPi * x); }};
      spec.psi1 = [](double) { return 0.0; };
      spec.psi2 = [](double) { return 0.0; };
      const double scale = 2.0 / gamma_function(3.0 - g);
      spec.source = [g, scale](double x, double t) {
        return scale * std::pow(t, 2.0 - g) * std::sin(kPi * x) + (t * t - t) * std::sin(kPi * x) * kPi * kPi;
      };
      spec.exact = [](double x, double t) { return (t * t - t) * std::sin(kPi * x); };
      break;
    }
    case 2: {
      spec.name = "example2";
      spec.alpha = 1.0;
      spec.phi1 = {[](double) { return 0.0; }, [](double) { return 0.0; }};
      spec.phi2 = spec.phi1;
      spec.psi1 = [](double) { return 0.0; };
      spec.psi2 = [](double) { return 0.0; };
      const double scale = 2.0 / gamma_function(3.0 - g);
      spec.source = [g, scale](double x, double t) {
        return scale * std::pow(t, 2.0 - g) * x * (1.0 - x) + t * t * x * (1.0 - x) + 2.0 * t * t;
      };
      spec.exact = [](double x, double t) { return t * t * x * (1.0 - x); };
      break;
    }
    case 3: {
      spec = manufactured_problem("example3", u, 1.0, gamma, 0.0, 1.0, 1.0);
      break;
    }
    default:
      throw std::invalid_argument("unknown builtin example " + std::to_string(id));
  }
  spec.gamma = gamma;
  spec.a = 0.0;
  spec.b = 1.0;
  spec.horizon = 1.0;
  return spec;
}

SpaceTimeFn printed_example3_source(FractionalOrder gamma) {
  const double g = gamma.value();
  const double scale = 2.0 / gamma_function(3.0 - g);
  return [g, scale](double x, double t) {
    return kPi * scale * std::sinh(x) * std::pow(t, 2.0 - g) + (1.0 - kPi) * t * t * std::sinh(x);
  };
}

double pde_residual(const SeparableSolution& u, double alpha, FractionalOrder gamma, const SpaceTimeFn& source,
                    double x, double t) {
  return u.caputo(x, t, gamma) + alpha * u.value(x, t) - u.curvature(x, t) - source(x, t);
}

ErrorReport error_norms(const Eigen::VectorXd& numeric, const SpaceTimeFn& exact, const Grid& grid, double t,
                        int M) {
  const int n = grid.intervals();
  if (numeric.size() != n + 1) throw std::invalid_argument("error_norms: need one value per knot");
  ErrorReport r;
  r.time = t;
  r.N = n;
  r.M = M;
  double sum_sq = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double e = std::abs(exact(grid.knot(j), t) - numeric(j));
    r.linf = std::max(r.linf, e);
    sum_sq += e * e;
  }
  r.l2 = std::sqrt(grid.h() * sum_sq);
  return r;
}

}  // namespace tbfrac
