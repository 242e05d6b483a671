#pragma once

#include <functional>
#include <vector>

namespace framewalk {

struct SolverSettings {
  double newton_tol = 1e-8;  ///< stop when ||R||_2 <= newton_tol * sqrt(dof)
  int max_newton = 50;
  double gmres_tol = 1e-3;   ///< relative to ||R|| at each Newton step
  int gmres_restart = 30;
  int gmres_max_restarts = 20;
  double line_search_factor = 0.5;
  int line_search_max_halvings = 8;
  double armijo = 1e-4;
  /// Use the Fourier-diagonal preconditioner of the step problem.
  bool precondition = false;

  /// Throws InvalidInput on non-positive tolerances or counts.
  void validate() const;
};

using Vector = std::vector<double>;
/// out = R(x); `out` arrives sized like x.
using ResidualFn = std::function<void(const Vector& x, Vector& out)>;
/// In-place application of an approximate inverse Jacobian.
using PreconditionerFn = std::function<void(Vector& v)>;

struct SolveResult {
  Vector x;
  double residual_norm = 0.0;
  int residual_evals = 0;
  int newton_iters = 0;
  int linear_iters = 0;
};

/// Inexact Newton with right-preconditioned restarted GMRES on finite-difference
/// Jacobian products and Armijo backtracking on ||R||^2. Every call of
/// `residual` is counted. Throws NonconvergenceError with the best iterate.
SolveResult jfnk_solve(const ResidualFn& residual, Vector guess, const SolverSettings& settings,
                       const PreconditionerFn& precondition = {});

struct GmresResult {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A M^-1 y = b, returns x = M^-1 y, starting from zero. `apply`
/// computes out = A v.
GmresResult gmres(const std::function<void(const Vector& v, Vector& out)>& apply, const Vector& b,
                  double rel_tol, int restart, int max_restarts, const PreconditionerFn& precondition = {});

}  // namespace framewalk
