#include "framewalk/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "framewalk/integrator.hpp"
#include "framewalk/manufactured.hpp"

namespace framewalk {

SweepMode parse_sweep_mode(const std::string& name) {
  if (name == "temporal") return SweepMode::Temporal;
  if (name == "spatial") return SweepMode::Spatial;
  throw InvalidInput("sweep mode must be 'temporal' or 'spatial', got '" + name + "'");
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fit_slope needs two or more points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_order(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_slope(lx, ly);
}

SweepRow manufactured_run(int N, double tau, const SweepSettings& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectralGrid grid(GridSpec::cube(N, 0.0, 2.0 * std::numbers::pi));
  StepModel model;
  model.rc = reduce_coefficients(s.coeffs);
  model.chi = s.coeffs.chi;
  model.kind = s.kind;
  model.solver = s.solver;
  const ReducedCoefficients rc = model.rc;
  const auto chi = model.chi;
  if (s.analytic_forcing)
    model.forcing = [grid, rc, chi](double t) { return forcing_term(t, grid, rc, chi); };
  else
    model.forcing = [grid, rc, chi](double t) { return forcing_term_spectral(t, grid, rc, chi); };

  RunSettings run;
  run.t_end = s.t_final;
  run.step.adaptive = false;
  run.step.tau_fixed = tau;
  const RunResult res = run_simulation(manufactured_frame(0.0, grid), model, run);
  if (!res.completed) throw std::runtime_error("manufactured run failed: " + res.failure);

  SweepRow row;
  row.N = N;
  row.tau = tau;
  row.steps = res.state.step;
  for (const auto& h : res.state.history) row.residual_evals += h.residual_evals;
  const FrameField exact = manufactured_frame(res.state.t, grid);
  for (std::size_t x = 0; x < exact.size(); ++x)
    for (int i = 0; i < 3; ++i)
      row.error[i] = std::max(row.error[i], (res.state.p[x].col(i) - exact[x].col(i)).cwiseAbs().maxCoeff());
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

SweepResult convergence_sweep(const SweepSettings& s) {
  SweepResult r;
  r.mode = s.mode;
  if (s.mode == SweepMode::Temporal) {
    for (double tau : s.taus) r.rows.push_back(manufactured_run(s.N, tau, s));
  } else {
    for (int N : s.Ns) r.rows.push_back(manufactured_run(N, s.tau, s));
  }
  if (r.rows.size() < 2) return r;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> x, y;
    for (const auto& row : r.rows) {
      x.push_back(s.mode == SweepMode::Temporal ? row.tau : double(row.N));
      y.push_back(row.error[i]);
    }
    if (s.mode == SweepMode::Temporal) {
      r.order[i] = fit_order(x, y);
    } else {
      for (double& v : y) v = std::log(v);
      r.order[i] = fit_slope(x, y);
    }
  }
  return r;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  char buf[512];
  os << "N,tau,err_n1,err_n2,err_n3,steps,residual_evals,seconds\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%d,%ld,%.3f\n", row.N, row.tau, row.error[0],
                  row.error[1], row.error[2], row.steps, row.residual_evals, row.seconds);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# %s,%.6g,%.6g,%.6g\n", r.mode == SweepMode::Temporal ? "order" : "log_rate",
                r.order[0], r.order[1], r.order[2]);
  os << buf;
  return os.str();
}

}  // namespace framewalk
