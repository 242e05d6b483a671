#include "framewalk/jfnk.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "framewalk/error.hpp"

namespace framewalk {

namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

void SolverSettings::validate() const {
  if (!(newton_tol > 0.0) || !(gmres_tol > 0.0) || !(armijo > 0.0))
    throw InvalidInput("solver tolerances must be positive");
  if (max_newton < 1 || gmres_restart < 1 || gmres_max_restarts < 1 || line_search_max_halvings < 0)
    throw InvalidInput("solver iteration limits must be positive");
  if (!(line_search_factor > 0.0 && line_search_factor < 1.0))
    throw InvalidInput("line search factor must lie in (0, 1)");
}

GmresResult gmres(const std::function<void(const Vector&, Vector&)>& apply, const Vector& b,
                  double rel_tol, int restart, int max_restarts, const PreconditionerFn& precondition) {
  const std::size_t n = b.size();
  GmresResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) return res;
  const double target = rel_tol * bnorm;

  Vector r = b;
  double beta = bnorm;
  std::vector<Vector> V(restart + 1, Vector(n));
  std::vector<Vector> H(restart + 1, Vector(restart, 0.0));
  Vector cs(restart), sn(restart), g(restart + 1);
  Vector w(n), z(n);

  for (int cycle = 0; cycle < max_restarts; ++cycle) {
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < restart; ++k) {
      z = V[k];
      if (precondition) precondition(z);
      apply(z, w);
      ++res.iterations;
      for (int j = 0; j <= k; ++j) {
        H[j][k] = dot(w, V[j]);
        axpy(-H[j][k], V[j], w);
      }
      H[k + 1][k] = norm(w);
      if (H[k + 1][k] > 0.0)
        for (std::size_t i = 0; i < n; ++i) V[k + 1][i] = w[i] / H[k + 1][k];
      for (int j = 0; j < k; ++j) {
        const double t = cs[j] * H[j][k] + sn[j] * H[j + 1][k];
        H[j + 1][k] = -sn[j] * H[j][k] + cs[j] * H[j + 1][k];
        H[j][k] = t;
      }
      const double d = std::hypot(H[k][k], H[k + 1][k]);
      cs[k] = d > 0.0 ? H[k][k] / d : 1.0;
      sn[k] = d > 0.0 ? H[k + 1][k] / d : 0.0;
      H[k][k] = d;
      H[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= target || H[k][k] == 0.0) {
        ++k;
        break;
      }
    }
    // Back substitution for the Krylov coefficients.
    Vector y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
      y[i] = H[i][i] != 0.0 ? s / H[i][i] : 0.0;
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < k; ++j) axpy(y[j], V[j], z);
    if (precondition) precondition(z);
    axpy(1.0, z, res.x);
    res.relative_residual = std::abs(g[k]) / bnorm;
    if (std::abs(g[k]) <= target) break;

    apply(res.x, w);
    ++res.iterations;
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
    beta = norm(r);
    res.relative_residual = beta / bnorm;
    if (beta <= target || beta == 0.0) break;
  }
  return res;
}

SolveResult jfnk_solve(const ResidualFn& residual, Vector guess, const SolverSettings& settings,
                       const PreconditionerFn& precondition) {
  settings.validate();
  const std::size_t n = guess.size();
  SolveResult out;
  out.x = std::move(guess);
  Vector r(n), trial(n), rt(n), shifted(n), rs(n);
  auto eval = [&](const Vector& x, Vector& into) {
    residual(x, into);
    ++out.residual_evals;
  };
  eval(out.x, r);
  double rnorm = norm(r);
  const double stop = settings.newton_tol * std::sqrt(double(n));
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  Vector best = out.x;
  double best_norm = rnorm;

  while (true) {
    if (!std::isfinite(rnorm)) break;
    if (rnorm <= stop) {
      out.residual_norm = rnorm;
      return out;
    }
    if (out.newton_iters >= settings.max_newton) break;
    ++out.newton_iters;

    const double xnorm = norm(out.x);
    auto jv = [&](const Vector& v, Vector& jvout) {
      const double vnorm = norm(v);
      if (vnorm == 0.0) {
        std::fill(jvout.begin(), jvout.end(), 0.0);
        return;
      }
      const double eps = sqrt_eps * (1.0 + xnorm) / vnorm;
      for (std::size_t i = 0; i < n; ++i) shifted[i] = out.x[i] + eps * v[i];
      eval(shifted, rs);
      jvout.resize(n);
      for (std::size_t i = 0; i < n; ++i) jvout[i] = (rs[i] - r[i]) / eps;
    };
    Vector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -r[i];
    const GmresResult lin = gmres(jv, rhs, settings.gmres_tol, settings.gmres_restart,
                                  settings.gmres_max_restarts, precondition);
    out.linear_iters += lin.iterations;

    double lambda = 1.0;
    bool accepted = false;
    double tnorm = rnorm;
    for (int h = 0; h <= settings.line_search_max_halvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = out.x[i] + lambda * lin.x[i];
      eval(trial, rt);
      tnorm = norm(rt);
      if (std::isfinite(tnorm) && tnorm * tnorm <= (1.0 - 2.0 * settings.armijo * lambda) * rnorm * rnorm) {
        accepted = true;
        break;
      }
      lambda *= settings.line_search_factor;
    }
    if (!accepted && !(std::isfinite(tnorm) && tnorm < rnorm)) break;
    out.x.swap(trial);
    r.swap(rt);
    rnorm = tnorm;
    if (rnorm < best_norm) {
      best_norm = rnorm;
      best = out.x;
    }
  }
  throw NonconvergenceError("Newton iteration did not converge (residual " + std::to_string(best_norm) +
                                " after " + std::to_string(out.newton_iters) + " iterations)",
                            std::move(best), best_norm, out.residual_evals);
}

}  // namespace framewalk
