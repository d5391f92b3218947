#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tbfrac/basis.hpp"
#include "tbfrac/fractime.hpp"
#include "tbfrac/problem.hpp"
#include "tbfrac/tridiagonal.hpp"

namespace tbfrac {

/// Spline coefficients c_{-1}..c_{N+1} (N+3 entries) with
///   c_{-1} + ... = g at the knots,
///   spline slope = g' at x_0 and x_N.
/// The two slope rows are eliminated so the remaining (N+1)-system is
/// strictly tridiagonal and solved by thomas_solve.
Eigen::VectorXd fit_initial_coefficients(const InitialProfile& g, const Grid& grid, const Stencil& stencil);

/// The (N+1)-system in c_0..c_N for the same fit, before the solve.
TridiagonalSystem initial_fit_system(const InitialProfile& g, const Grid& grid, const Stencil& stencil);

/// Time-stepping state. history[m] holds c^m; knot_history[m] holds the
/// knot values S(c^m). Once the first step is taken, previous_level holds
/// the eliminated level c^{-1} = c^1 - 2 dt phi2_coeffs and its knot values.
struct SolverState {
  Grid grid;
  CaputoWeights weights;
  Stencil stencil;
  const ProblemSpec* problem;
  Eigen::VectorXd phi2_coeffs;
  std::vector<Eigen::VectorXd> history;
  std::vector<Eigen::VectorXd> knot_history;
  Eigen::VectorXd previous_level;
  Eigen::VectorXd previous_knots;

  /// Number of the newest level n (history holds c^0..c^n).
  int level() const { return static_cast<int>(history.size()) - 1; }
  double dt() const { return weights.dt; }
  /// Knot values of level m, m >= -1.
  const Eigen::VectorXd& knots_at(int m) const;
};

/// Fits c^0 from phi1 and the velocity coefficients from phi2. Weights are
/// sized for `steps` time steps of length dt.
SolverState make_solver_state(const ProblemSpec& problem, int N, double dt, int steps);

/// System for c^1 with c^{-1} replaced by c^1 - 2 dt phi2_coeffs.
TridiagonalSystem assemble_first_step(const SolverState& state, double t1);

/// System for c^{n+1}, n = state.level() >= 1.
TridiagonalSystem assemble_step(const SolverState& state, double t_next);

/// Rebuilds c_{-1}..c_{N+1} from the interior solution c_0..c_N using the
/// Dirichlet rows a1 c_{-1} + a2 c_0 + a1 c_1 = left (and mirrored on the right).
Eigen::VectorXd expand_with_boundary(const Eigen::VectorXd& interior, double left, double right,
                                     const Stencil& stencil);

/// Advances the state by one level.
void advance(SolverState& state);

struct SolutionHistory {
  Grid grid;
  std::vector<double> times;
  /// values(n, j) = u_j^n, n = 0..M, j = 0..N.
  Eigen::MatrixXd values;
  /// Largest relative residual ||T x - rhs|| / (1 + ||rhs||) seen in any solve.
  double max_relative_residual = 0.0;

  Eigen::VectorXd at_level(int n) const { return values.row(n).transpose(); }
};

/// Runs M steps of size horizon / M on N intervals.
SolutionHistory solve(const ProblemSpec& problem, int N, int M);

}  // namespace tbfrac
