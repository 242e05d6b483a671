#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "framewalk/discrete_gradient.hpp"
#include "framewalk/elasticity.hpp"
#include "framewalk/field.hpp"
#include "framewalk/jfnk.hpp"

namespace framewalk {

struct RateTag;
/// omega = (w1, w2, w3) per node, the entries of
///   A = [[0, w3, -w2], [-w3, 0, w1], [w2, -w1, 0]] = skew(omega).
using RateField = NodeField<Vec3, RateTag>;

/// (L_k F) / chi_k per node, where L_k F = V_k(p) : grad with the tangent
/// basis of `p`. With this sign p A(omega) = -sum_k omega_k V_k descends
/// the energy.
RateField rotational_rate(const FrameField& p, const MatrixField& grad, const std::array<double, 3>& chi);

/// Midpoint rate built from the two-state gradient and V_k((p_old + p_new) / 2).
RateField assemble_A_mid(const FrameField& p_old, const FrameField& p_new, const ReducedCoefficients& rc,
                         const std::array<double, 3>& chi, GradientKind kind = GradientKind::Biaxial);

/// p (I + tau/2 A)(I - tau/2 A)^-1 per node.
Mat3 cayley(const Vec3& omega, double tau);
FrameField cayley_update(const FrameField& p, const RateField& omega, double tau);

struct AdaptiveSettings {
  bool adaptive = true;
  double tau_max = 2e-3;
  double tau_min = 1e-5;
  double alpha = 1e-3;
  /// Step used when adaptive is false.
  double tau_fixed = 1e-3;

  void validate() const;
};

/// max(tau_min, tau_max / sqrt(1 + alpha |(F_curr - F_prev) / tau_prev|^2)).
double adaptive_dt(double F_curr, double F_prev, double tau_prev, const AdaptiveSettings& a);

/// Everything that defines the time-discrete equations apart from the state.
struct StepModel {
  ReducedCoefficients rc;
  std::array<double, 3> chi{2.0, 2.0, 2.0};
  GradientKind kind = GradientKind::Biaxial;
  SolverSettings solver;
  /// Optional source f(t). When set, the step solves for the nine entries of
  /// p_new directly and the update is no longer a rotation.
  std::function<MatrixField(double t)> forcing;
};

/// R(omega) = omega - rate_mid(p_old, cayley_update(p_old, omega, tau)).
RateField step_residual(const RateField& omega, const FrameField& p_old, double tau, const StepModel& model);
/// R(q) = q - p_old - tau (p_mid A_mid) - tau f_mid, with p_mid = (p_old + q) / 2.
MatrixField forced_step_residual(const MatrixField& q, const FrameField& p_old, double tau,
                                 const MatrixField& f_mid, const StepModel& model);

struct HistoryRecord {
  int step = 0;
  double t = 0.0;
  double tau = 0.0;
  double F = 0.0;
  double F1 = 0.0;
  double F2 = 0.0;
  double F3 = 0.0;
  double orth_error = 0.0;
  int residual_evals = 0;
  int newton_iters = 0;
  /// tau * sum_k chi_k int omega_mid_k^2, the discrete dissipation.
  double dissipation = 0.0;
};

struct StepState {
  FrameField p;
  double t = 0.0;
  /// Step size to attempt next.
  double tau = 0.0;
  EnergyParts energy;
  /// Last accepted rate; the warm start of the next solve.
  RateField omega;
  int step = 0;
  std::vector<HistoryRecord> history;

  static StepState initial(FrameField p0, const StepModel& model, double tau0);
};

/// Advances one step of size state.tau (halved once on nonconvergence) and
/// appends its record. Throws NonconvergenceError if the retry also fails.
StepState grdg_step(const StepState& state, const StepModel& model);

struct RunSettings {
  double t_end = 1.0;
  AdaptiveSettings step;
  /// Hard cap on accepted steps (0 = none).
  int max_steps = 0;
};

struct RunResult {
  StepState state;
  EnergyParts initial_energy;
  bool completed = false;
  /// Every step satisfied F_new <= F_old + 1e-10 (1 + |F_old|).
  bool monotone = true;
  std::string failure;
};

using StepObserver = std::function<void(const StepState&, const HistoryRecord&)>;

/// Marches from t = 0 to t_end. Step failures end the run with the last good
/// state and `completed = false`.
RunResult run_simulation(FrameField p0, const StepModel& model, const RunSettings& settings,
                         const StepObserver& observer = {});

bool monotone_step(double F_new, double F_old);

}  // namespace framewalk
