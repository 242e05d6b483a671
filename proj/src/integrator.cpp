#include "framewalk/integrator.hpp"

#include <cmath>

#include "framewalk/frame.hpp"
#include "framewalk/spectral.hpp"

namespace framewalk {

namespace {

double frobenius(const Mat3& a, const Mat3& b) { return a.cwiseProduct(b).sum(); }

// L_k = V_k(p) : G in closed form.
Vec3 rotational_derivative(const Mat3& p, const Mat3& G) {
  const Vec3 n1 = p.col(0), n2 = p.col(1), n3 = p.col(2);
  const Vec3 d1 = G.col(0), d2 = G.col(1), d3 = G.col(2);
  return {n3.dot(d2) - n2.dot(d3), -n3.dot(d1) + n1.dot(d3), n2.dot(d1) - n1.dot(d2)};
}

// Rough per-column stiffness of the reformulated energy, used only by the
// preconditioner.
std::array<double, 3> column_stiffness(const ReducedCoefficients& rc) {
  std::array<double, 3> s{};
  for (int c = 0; c < 3; ++c) {
    double twist = 0.0;
    for (int i = 0; i < 3; ++i) twist += rc.kk[i][c];
    s[c] = rc.gamma[c] + (rc.k[c] + twist) / 3.0;
  }
  return s;
}

// Diagonal Fourier approximation of d R / d omega:
// 1 + tau / (2 chi_k) (s_{k+1} + s_{k+2}) |k|^2 for component k.
class RatePreconditioner {
 public:
  RatePreconditioner(const SpectralGrid& g, double tau, const StepModel& model) : grid_(g) {
    const auto s = column_stiffness(model.rc);
    const auto k2 = g.wavenumber_squared();
    for (int k = 0; k < 3; ++k) {
      const double c = tau / (2.0 * model.chi[k]) * (s[(k + 1) % 3] + s[(k + 2) % 3]);
      inv_[k].resize(k2.size());
      for (std::size_t m = 0; m < k2.size(); ++m) inv_[k][m] = 1.0 / (1.0 + c * k2[m]);
    }
  }

  // v holds three interleaved components per node.
  void apply(std::vector<double>& v) const {
    const std::size_t n = grid_.size();
    std::vector<double> buf(n);
    for (int k = 0; k < 3; ++k) {
      for (std::size_t x = 0; x < n; ++x) buf[x] = v[3 * x + k];
      auto modes = grid_.forward(buf);
      for (std::size_t m = 0; m < modes.size(); ++m) modes[m] *= inv_[k][m];
      grid_.inverse(std::move(modes), buf);
      for (std::size_t x = 0; x < n; ++x) v[3 * x + k] = buf[x];
    }
  }

 private:
  SpectralGrid grid_;
  std::array<std::vector<double>, 3> inv_;
};

RateField rate_from(const SpectralGrid& g, const std::vector<double>& x) {
  RateField w(g, Vec3::Zero());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = Vec3(x[3 * i], x[3 * i + 1], x[3 * i + 2]);
  return w;
}

void store(const RateField& w, std::vector<double>& x) {
  x.resize(3 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int k = 0; k < 3; ++k) x[3 * i + k] = w[i](k);
}

MatrixField matrices_from(const SpectralGrid& g, const std::vector<double>& x) {
  MatrixField q(g, Mat3::Zero());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = Eigen::Map<const Mat3>(x.data() + 9 * i);
  return q;
}

void store(const MatrixField& q, std::vector<double>& x) {
  x.resize(9 * q.size());
  for (std::size_t i = 0; i < q.size(); ++i) Eigen::Map<Mat3>(x.data() + 9 * i) = q[i];
}

RateField rate_mid(const DiscreteGradientKernel& kernel, const MatrixField& p_new,
                   const std::array<double, 3>& chi) {
  const FrameField& p_old = kernel.old_state();
  const MatrixField D = kernel(p_new);
  RateField w(p_old.grid(), Vec3::Zero());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vec3 L = rotational_derivative(0.5 * (p_old[i] + p_new[i]), D[i]);
    w[i] = Vec3(L(0) / chi[0], L(1) / chi[1], L(2) / chi[2]);
  }
  return w;
}

double dissipation_of(const RateField& w, double tau, const std::array<double, 3>& chi) {
  double s = 0.0;
  for (const Vec3& v : w) s += chi[0] * v(0) * v(0) + chi[1] * v(1) * v(1) + chi[2] * v(2) * v(2);
  return tau * s / double(w.size()) * w.grid().volume();
}

struct Attempt {
  FrameField p;
  RateField omega;
  SolveResult solve;
  double dissipation = 0.0;
};

Attempt solve_rate_step(const StepState& s, double tau, const StepModel& model) {
  const auto& g = s.p.grid();
  const DiscreteGradientKernel kernel(s.p, model.rc, model.kind);
  auto residual = [&](const std::vector<double>& x, std::vector<double>& out) {
    const RateField w = rate_from(g, x);
    const FrameField p_new = cayley_update(s.p, w, tau);
    const RateField r = rate_mid(kernel, field_cast<MatrixField>(p_new), model.chi);
    out.resize(x.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      for (int k = 0; k < 3; ++k) out[3 * i + k] = w[i](k) - r[i](k);
  };
  PreconditionerFn pre;
  std::optional<RatePreconditioner> rp;
  if (model.solver.precondition) {
    rp.emplace(g, tau, model);
    pre = [&rp](std::vector<double>& v) { rp->apply(v); };
  }
  std::vector<double> guess;
  store(s.omega, guess);
  Attempt a{s.p, s.omega, jfnk_solve(residual, std::move(guess), model.solver, pre), 0.0};
  a.omega = rate_from(g, a.solve.x);
  a.p = cayley_update(s.p, a.omega, tau);
  a.dissipation = dissipation_of(rate_mid(kernel, field_cast<MatrixField>(a.p), model.chi), tau, model.chi);
  return a;
}

Attempt solve_forced_step(const StepState& s, double tau, const StepModel& model) {
  const auto& g = s.p.grid();
  const DiscreteGradientKernel kernel(s.p, model.rc, model.kind);
  const MatrixField f_mid = model.forcing(s.t + 0.5 * tau);
  auto residual = [&](const std::vector<double>& x, std::vector<double>& out) {
    const MatrixField q = matrices_from(g, x);
    const RateField w = rate_mid(kernel, q, model.chi);
    out.resize(x.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Mat3 mid = 0.5 * (s.p[i] + q[i]);
      const Mat3 r = q[i] - s.p[i] - tau * (mid * skew(w[i])) - tau * f_mid[i];
      Eigen::Map<Mat3>(out.data() + 9 * i) = r;
    }
  };
  PreconditionerFn pre;
  std::optional<RatePreconditioner> rp;
  if (model.solver.precondition) {
    // Precondition the tangent part through the rate operator and pass the
    // normal part through unchanged.
    rp.emplace(g, tau, model);
    pre = [&](std::vector<double>& v) {
      const std::size_t n = s.p.size();
      std::vector<double> c(3 * n);
      std::vector<std::array<Mat3, 3>> V(n);
      for (std::size_t i = 0; i < n; ++i) {
        V[i] = tangent_vectors(s.p[i]);
        const Eigen::Map<const Mat3> m(v.data() + 9 * i);
        for (int k = 0; k < 3; ++k) c[3 * i + k] = 0.5 * frobenius(V[i][k], m);
      }
      std::vector<double> c2 = c;
      rp->apply(c2);
      for (std::size_t i = 0; i < n; ++i) {
        Eigen::Map<Mat3> m(v.data() + 9 * i);
        for (int k = 0; k < 3; ++k) m += (c2[3 * i + k] - c[3 * i + k]) * V[i][k];
      }
    };
  }
  MatrixField q0 = zeros_matrix(g);
  for (std::size_t i = 0; i < q0.size(); ++i)
    q0[i] = s.p[i] + tau * (s.p[i] * skew(s.omega[i]) + f_mid[i]);
  std::vector<double> guess;
  store(q0, guess);
  Attempt a{s.p, s.omega, jfnk_solve(residual, std::move(guess), model.solver, pre), 0.0};
  const MatrixField q = matrices_from(g, a.solve.x);
  a.p = field_cast<FrameField>(q);
  a.omega = rate_mid(kernel, q, model.chi);
  a.dissipation = dissipation_of(a.omega, tau, model.chi);
  return a;
}

}  // namespace

RateField rotational_rate(const FrameField& p, const MatrixField& grad, const std::array<double, 3>& chi) {
  require_same_grid(p.grid(), grad.grid(), "rotational_rate");
  RateField w(p.grid(), Vec3::Zero());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vec3 L = rotational_derivative(p[i], grad[i]);
    w[i] = Vec3(L(0) / chi[0], L(1) / chi[1], L(2) / chi[2]);
  }
  return w;
}

RateField assemble_A_mid(const FrameField& p_old, const FrameField& p_new, const ReducedCoefficients& rc,
                         const std::array<double, 3>& chi, GradientKind kind) {
  require_same_grid(p_old.grid(), p_new.grid(), "assemble_A_mid");
  const DiscreteGradientKernel kernel(p_old, rc, kind);
  return rate_mid(kernel, field_cast<MatrixField>(p_new), chi);
}

Mat3 cayley(const Vec3& omega, double tau) {
  const double h = 0.5 * tau;
  const Mat3 A = skew(omega);
  return Mat3::Identity() + (2.0 * h * A + 2.0 * h * h * A * A) / (1.0 + h * h * omega.squaredNorm());
}

FrameField cayley_update(const FrameField& p, const RateField& omega, double tau) {
  require_same_grid(p.grid(), omega.grid(), "cayley_update");
  FrameField out = p;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] * cayley(omega[i], tau);
  return out;
}

void AdaptiveSettings::validate() const {
  if (adaptive) {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min)) throw InvalidInput("need 0 < tau_min <= tau_max");
    if (!(alpha >= 0.0)) throw InvalidInput("alpha must be >= 0");
  } else if (!(tau_fixed > 0.0)) {
    throw InvalidInput("fixed step must be > 0");
  }
}

double adaptive_dt(double F_curr, double F_prev, double tau_prev, const AdaptiveSettings& a) {
  if (!(tau_prev > 0.0)) throw InvalidInput("adaptive_dt: previous step must be > 0");
  const double rate = (F_curr - F_prev) / tau_prev;
  const double tau = a.tau_max / std::sqrt(1.0 + a.alpha * rate * rate);
  return std::max(a.tau_min, std::isfinite(tau) ? tau : a.tau_min);
}

RateField step_residual(const RateField& omega, const FrameField& p_old, double tau, const StepModel& model) {
  const DiscreteGradientKernel kernel(p_old, model.rc, model.kind);
  const FrameField p_new = cayley_update(p_old, omega, tau);
  const RateField r = rate_mid(kernel, field_cast<MatrixField>(p_new), model.chi);
  RateField out = omega;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= r[i];
  return out;
}

MatrixField forced_step_residual(const MatrixField& q, const FrameField& p_old, double tau,
                                 const MatrixField& f_mid, const StepModel& model) {
  const DiscreteGradientKernel kernel(p_old, model.rc, model.kind);
  const RateField w = rate_mid(kernel, q, model.chi);
  MatrixField out = zeros_matrix(p_old.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Mat3 mid = 0.5 * (p_old[i] + q[i]);
    out[i] = q[i] - p_old[i] - tau * (mid * skew(w[i])) - tau * f_mid[i];
  }
  return out;
}

StepState StepState::initial(FrameField p0, const StepModel& model, double tau0) {
  const SpectralGrid g = p0.grid();
  StepState s{std::move(p0), 0.0, tau0, {}, RateField(g, Vec3::Zero()), 0, {}};
  s.energy = total_energy(s.p, model.rc);
  return s;
}

StepState grdg_step(const StepState& state, const StepModel& model) {
  const bool forced = static_cast<bool>(model.forcing);
  double tau = state.tau;
  int spent = 0;
  Attempt a{state.p, state.omega, {}, 0.0};
  for (int attempt = 0;; ++attempt) {
    try {
      a = forced ? solve_forced_step(state, tau, model) : solve_rate_step(state, tau, model);
      break;
    } catch (const NonconvergenceError& e) {
      spent += e.residual_evaluations;
      if (attempt == 1) throw;
      tau *= 0.5;
    }
  }
  StepState next{a.p, state.t + tau, tau, total_energy(a.p, model.rc), a.omega, state.step + 1, state.history};
  HistoryRecord h;
  h.step = next.step;
  h.t = next.t;
  h.tau = tau;
  h.F = next.energy.F;
  h.F1 = next.energy.F1;
  h.F2 = next.energy.F2;
  h.F3 = next.energy.F3;
  h.orth_error = orthonormality_error(next.p);
  h.residual_evals = a.solve.residual_evals + spent;
  h.newton_iters = a.solve.newton_iters;
  h.dissipation = a.dissipation;
  next.history.push_back(h);
  return next;
}

bool monotone_step(double F_new, double F_old) { return F_new <= F_old + 1e-10 * (1.0 + std::abs(F_old)); }

RunResult run_simulation(FrameField p0, const StepModel& model, const RunSettings& settings,
                         const StepObserver& observer) {
  settings.step.validate();
  model.solver.validate();
  if (!(settings.t_end > 0.0)) throw InvalidInput("t_end must be > 0");
  const AdaptiveSettings& a = settings.step;
  RunResult res{StepState::initial(std::move(p0), model, a.adaptive ? a.tau_max : a.tau_fixed), {}, false, true, {}};
  res.initial_energy = res.state.energy;
  const double eps = 1e-12 * std::max(1.0, settings.t_end);
  std::vector<HistoryRecord> history;
  while (settings.t_end - res.state.t > eps) {
    if (settings.max_steps > 0 && res.state.step >= settings.max_steps) break;
    StepState& s = res.state;
    s.tau = std::min(s.tau, settings.t_end - s.t);
    std::optional<StepState> stepped;
    try {
      stepped.emplace(grdg_step(s, model));
    } catch (const NonconvergenceError& e) {
      res.failure = std::string("step ") + std::to_string(s.step + 1) + " at t=" + std::to_string(s.t) +
                    ": " + e.what();
      break;
    }
    StepState& next = *stepped;
    const HistoryRecord h = next.history.back();
    if (!model.forcing && !monotone_step(next.energy.F, s.energy.F)) res.monotone = false;
    history.push_back(h);
    if (observer) observer(next, h);
    next.tau = a.adaptive ? adaptive_dt(next.energy.F, s.energy.F, h.tau, a) : a.tau_fixed;
    next.history.clear();
    res.state = std::move(next);
  }
  res.state.history = std::move(history);
  res.completed = res.failure.empty() && !(settings.t_end - res.state.t > eps);
  return res;
}

}  // namespace framewalk
