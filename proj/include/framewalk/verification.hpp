#pragma once

#include <array>
#include <string>
#include <vector>

#include "framewalk/discrete_gradient.hpp"
#include "framewalk/elasticity.hpp"
#include "framewalk/jfnk.hpp"

namespace framewalk {

enum class SweepMode { Temporal, Spatial };

SweepMode parse_sweep_mode(const std::string& name);

struct SweepSettings {
  SweepMode mode = SweepMode::Temporal;
  /// Temporal mode: grid size and step sequence.
  int N = 24;
  std::vector<double> taus{0.1, 0.05, 0.025, 0.0125, 0.00625};
  /// Spatial mode: grid sizes and the fixed step.
  std::vector<int> Ns{6, 10, 14, 18, 22};
  double tau = 1e-3;
  /// Time at which errors are measured.
  double t_final = 0.2;
  ElasticCoefficients coeffs;
  SolverSettings solver;
  GradientKind kind = GradientKind::Biaxial;
  /// Closed-form forcing (default) or forcing computed on the run grid.
  bool analytic_forcing = true;
};

struct SweepRow {
  int N = 0;
  double tau = 0.0;
  /// Max-norm errors of n1, n2, n3 against the exact solution.
  std::array<double, 3> error{};
  int steps = 0;
  long residual_evals = 0;
  double seconds = 0.0;
};

struct SweepResult {
  SweepMode mode = SweepMode::Temporal;
  std::vector<SweepRow> rows;
  /// Temporal: least-squares slope of log error vs log tau.
  /// Spatial: slope of log error vs N (a negative exponential rate).
  std::array<double, 3> order{};
};

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);
/// fit_slope(log x, log y).
double fit_order(const std::vector<double>& x, const std::vector<double>& y);

/// Runs the forced manufactured problem for one (N, tau) pair.
SweepRow manufactured_run(int N, double tau, const SweepSettings& s);

SweepResult convergence_sweep(const SweepSettings& s);

/// Header `N,tau,err_n1,err_n2,err_n3,steps,residual_evals,seconds` plus one
/// row per point and a trailing `# order,...` comment line.
std::string sweep_csv(const SweepResult& r);

}  // namespace framewalk
