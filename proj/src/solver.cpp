#include "tbfrac/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbfrac {

namespace {

/// Tridiagonal collocation rows lead c_{j-1} + centre c_j + lead c_{j+1} = rhs_j
/// for j = 0..N with the ghost unknowns c_{-1}, c_{N+1} eliminated through
/// the Dirichlet rows. The first and last rows decouple from their neighbour.
TridiagonalSystem collocation_system(double lead, double centre, Eigen::VectorXd rhs, double left, double right,
                                     const Stencil& s) {
  const Eigen::Index n = rhs.size();
  TridiagonalSystem sys;
  sys.sub = Eigen::VectorXd::Constant(n - 1, lead);
  sys.super = Eigen::VectorXd::Constant(n - 1, lead);
  sys.diag = Eigen::VectorXd::Constant(n, centre);
  const double ratio = lead / s.a1;
  sys.diag(0) = centre - ratio * s.a2;
  sys.super(0) = 0.0;
  rhs(0) -= ratio * left;
  sys.diag(n - 1) = centre - ratio * s.a2;
  sys.sub(n - 2) = 0.0;
  rhs(n - 1) -= ratio * right;
  sys.rhs = std::move(rhs);
  return sys;
}

Eigen::VectorXd source_at_knots(const SolverState& state, double t) {
  const int n = state.grid.intervals();
  Eigen::VectorXd f(n + 1);
  for (int j = 0; j <= n; ++j) f(j) = state.problem->source(state.grid.knot(j), t);
  return f;
}

double relative_residual(const TridiagonalSystem& sys, const Eigen::VectorXd& x) {
  const double r = (sys.apply(x) - sys.rhs).lpNorm<Eigen::Infinity>();
  return r / (1.0 + sys.rhs.lpNorm<Eigen::Infinity>());
}

}  // namespace

TridiagonalSystem initial_fit_system(const InitialProfile& g, const Grid& grid, const Stencil& s) {
  const int n = grid.intervals();
  TridiagonalSystem sys;
  sys.sub = Eigen::VectorXd::Constant(n, s.a1);
  sys.super = Eigen::VectorXd::Constant(n, s.a1);
  sys.diag = Eigen::VectorXd::Constant(n + 1, s.a2);
  sys.rhs.resize(n + 1);
  for (int j = 0; j <= n; ++j) sys.rhs(j) = g.value(grid.knot(j));
  // Slope rows: c_{-1} = c_1 - g'(x_0)/a3 and c_{N+1} = c_{N-1} + g'(x_N)/a3.
  sys.super(0) = 2.0 * s.a1;
  sys.rhs(0) += s.a1 * g.slope(grid.a()) / s.a3;
  sys.sub(n - 1) = 2.0 * s.a1;
  sys.rhs(n) -= s.a1 * g.slope(grid.b()) / s.a3;
  return sys;
}

Eigen::VectorXd fit_initial_coefficients(const InitialProfile& g, const Grid& grid, const Stencil& s) {
  const int n = grid.intervals();
  const Eigen::VectorXd inner = thomas_solve(initial_fit_system(g, grid, s));
  Eigen::VectorXd c(n + 3);
  c.segment(1, n + 1) = inner;
  c(0) = inner(1) - g.slope(grid.a()) / s.a3;
  c(n + 2) = inner(n - 1) + g.slope(grid.b()) / s.a3;
  return c;
}

Eigen::VectorXd expand_with_boundary(const Eigen::VectorXd& interior, double left, double right, const Stencil& s) {
  const Eigen::Index n = interior.size() - 1;
  Eigen::VectorXd c(n + 3);
  c.segment(1, n + 1) = interior;
  c(0) = (left - s.a2 * interior(0) - s.a1 * interior(1)) / s.a1;
  c(n + 2) = (right - s.a2 * interior(n) - s.a1 * interior(n - 1)) / s.a1;
  return c;
}

const Eigen::VectorXd& SolverState::knots_at(int m) const {
  if (m == -1) {
    if (previous_knots.size() == 0) throw std::logic_error("level -1 is not available before the first step");
    return previous_knots;
  }
  return knot_history.at(static_cast<std::size_t>(m));
}

SolverState make_solver_state(const ProblemSpec& problem, int N, double dt, int steps) {
  Grid grid(problem.a, problem.b, N);
  const Stencil stencil = stencil_coefficients(grid.h());
  SolverState state{grid,
                    caputo_weights(problem.gamma, dt, static_cast<std::size_t>(std::max(steps, 1))),
                    stencil,
                    &problem,
                    fit_initial_coefficients(problem.phi2, grid, stencil),
                    {},
                    {},
                    {},
                    {}};
  state.history.push_back(fit_initial_coefficients(problem.phi1, grid, stencil));
  state.knot_history.push_back(knot_values(state.history.back(), stencil));
  return state;
}

TridiagonalSystem assemble_first_step(const SolverState& state, double t1) {
  if (state.level() != 0) throw std::logic_error("assemble_first_step: history must hold exactly c^0");
  const Stencil& s = state.stencil;
  const double a0 = state.weights.alpha0;
  const double alpha = state.problem->alpha;
  const double lead = (2.0 * a0 + alpha) * s.a1 - s.a4;
  const double centre = (2.0 * a0 + alpha) * s.a2 - s.a5;
  Eigen::VectorXd rhs = 2.0 * a0 * state.knot_history[0] +
                        2.0 * state.dt() * a0 * knot_values(state.phi2_coeffs, s) + source_at_knots(state, t1);
  return collocation_system(lead, centre, std::move(rhs), state.problem->psi1(t1), state.problem->psi2(t1), s);
}

TridiagonalSystem assemble_step(const SolverState& state, double t_next) {
  const int n = state.level();
  if (n < 1) throw std::logic_error("assemble_step: use assemble_first_step for the first level");
  if (static_cast<std::size_t>(n) >= state.weights.b.size())
    throw std::logic_error("assemble_step: weights were sized for fewer steps");
  const Stencil& s = state.stencil;
  const double a0 = state.weights.alpha0;
  const double alpha = state.problem->alpha;
  const double lead = (a0 + alpha) * s.a1 - s.a4;
  const double centre = (a0 + alpha) * s.a2 - s.a5;

  Eigen::VectorXd memory = Eigen::VectorXd::Zero(state.knot_history[0].size());
  for (int k = 1; k <= n; ++k) {
    const double bk = state.weights.b[static_cast<std::size_t>(k)];
    if (bk == 0.0) continue;
    memory += bk * (state.knots_at(n + 1 - k) - 2.0 * state.knots_at(n - k) + state.knots_at(n - 1 - k));
  }
  Eigen::VectorXd rhs = 2.0 * a0 * state.knots_at(n) - a0 * state.knots_at(n - 1) - a0 * memory +
                        source_at_knots(state, t_next);
  return collocation_system(lead, centre, std::move(rhs), state.problem->psi1(t_next),
                            state.problem->psi2(t_next), s);
}

namespace {

double advance_with_residual(SolverState& state) {
  const int n = state.level();
  const double t_next = static_cast<double>(n + 1) * state.dt();
  const TridiagonalSystem sys = n == 0 ? assemble_first_step(state, t_next) : assemble_step(state, t_next);
  const Eigen::VectorXd inner = thomas_solve(sys);
  const double residual = relative_residual(sys, inner);
  Eigen::VectorXd c =
      expand_with_boundary(inner, state.problem->psi1(t_next), state.problem->psi2(t_next), state.stencil);
  state.knot_history.push_back(knot_values(c, state.stencil));
  if (n == 0) {
    state.previous_level = c - 2.0 * state.dt() * state.phi2_coeffs;
    state.previous_knots = knot_values(state.previous_level, state.stencil);
  }
  state.history.push_back(std::move(c));
  return residual;
}

}  // namespace

void advance(SolverState& state) { advance_with_residual(state); }

SolutionHistory solve(const ProblemSpec& problem, int N, int M) {
  if (N < 3) throw std::invalid_argument("solve: need N >= 3");
  if (M < 2) throw std::invalid_argument("solve: need M >= 2");
  problem.validate();
  const double dt = problem.horizon / M;
  SolverState state = make_solver_state(problem, N, dt, M);

  SolutionHistory out{state.grid, {}, Eigen::MatrixXd(M + 1, N + 1), 0.0};
  out.times.reserve(static_cast<std::size_t>(M) + 1);
  out.times.push_back(0.0);
  out.values.row(0) = state.knot_history[0].transpose();
  for (int n = 0; n < M; ++n) {
    const double residual = advance_with_residual(state);
    out.max_relative_residual = std::max(out.max_relative_residual, residual);
    out.times.push_back(static_cast<double>(n + 1) * dt);
    out.values.row(n + 1) = state.knot_history.back().transpose();
  }
  return out;
}

}  // namespace tbfrac
