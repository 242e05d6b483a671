#include "framewalk/discrete_gradient.hpp"

#include "framewalk/spectral.hpp"

namespace framewalk {

namespace {

struct ColumnData {
  MatrixField elliptic;  // column i: -gamma_i lap n_i - k_i grad div n_i
  MatrixField curl;      // column j: curl n_j
  MatrixField twist;     // (i, j): n_i . curl n_j
};

template <class F>
ColumnData column_data(const F& p, const ReducedCoefficients& rc) {
  const auto& g = p.grid();
  ColumnData d{zeros_matrix(g), zeros_matrix(g), zeros_matrix(g)};
  for (int i = 0; i < 3; ++i) {
    const spectral::VectorModes modes = spectral::forward_column(p, i);
    const VectorField c = spectral::curl(g, modes);
    for (std::size_t x = 0; x < p.size(); ++x) d.curl[x].col(i) = c[x];
    if (rc.gamma[i] != 0.0 || rc.k[i] != 0.0) {
      const VectorField e = spectral::elliptic(g, modes, rc.gamma[i], rc.k[i]);
      for (std::size_t x = 0; x < p.size(); ++x) d.elliptic[x].col(i) = e[x];
    }
  }
  for (std::size_t x = 0; x < p.size(); ++x) d.twist[x] = p[x].transpose() * d.curl[x];
  return d;
}

}  // namespace

BetaTable beta_mid(const FrameField& p_old, const FrameField& p_new) {
  require_same_grid(p_old.grid(), p_new.grid(), "beta_mid");
  const ReducedCoefficients none;
  const ColumnData a = column_data(p_old, none);
  const ColumnData b = column_data(p_new, none);
  return {midpoint(a.twist, b.twist)};
}

DiscreteGradientKernel::DiscreteGradientKernel(const FrameField& p_old, const ReducedCoefficients& rc,
                                               GradientKind kind)
    : old_(p_old),
      rc_(rc),
      kind_(kind),
      elliptic_old_(zeros_matrix(p_old.grid())),
      curl_old_(zeros_matrix(p_old.grid())),
      twist_old_(zeros_matrix(p_old.grid())) {
  ColumnData d = column_data(p_old, rc);
  elliptic_old_ = std::move(d.elliptic);
  curl_old_ = std::move(d.curl);
  twist_old_ = std::move(d.twist);
  old_energy_ = total_energy(p_old, rc).F;
}

MatrixField DiscreteGradientKernel::operator()(const MatrixField& p_new) const {
  require_same_grid(old_.grid(), p_new.grid(), "discrete gradient");
  return kind_ == GradientKind::Biaxial ? biaxial(p_new) : gonzalez(p_new);
}

MatrixField DiscreteGradientKernel::biaxial(const MatrixField& p_new) const {
  const auto& g = old_.grid();
  const std::size_t n = old_.size();
  const ColumnData d = column_data(p_new, rc_);
  MatrixField out = zeros_matrix(g);
  for (std::size_t x = 0; x < n; ++x) out[x] = 0.5 * (elliptic_old_[x] + d.elliptic[x]);
  if (!rc_.has_twist_terms()) return out;

  std::vector<Mat3> mid(n), beta(n), curl_mid(n);
  for (std::size_t x = 0; x < n; ++x) {
    mid[x] = 0.5 * (old_[x] + p_new[x]);
    beta[x] = 0.5 * (twist_old_[x] + d.twist[x]);
    curl_mid[x] = 0.5 * (curl_old_[x] + d.curl[x]);
  }
  for (int i = 0; i < 3; ++i) {
    bool any = false;
    VectorField u = zeros_vector(g);
    for (int j = 0; j < 3; ++j) {
      const double kji = rc_.kk[j][i], kij = rc_.kk[i][j];
      if (kji != 0.0) {
        any = true;
        for (std::size_t x = 0; x < n; ++x) u[x] += kji * beta[x](j, i) * mid[x].col(j);
      }
      if (kij != 0.0)
        for (std::size_t x = 0; x < n; ++x) out[x].col(i) += kij * beta[x](i, j) * curl_mid[x].col(j);
    }
    if (any) {
      const VectorField cu = spectral::curl(u);
      for (std::size_t x = 0; x < n; ++x) out[x].col(i) += cu[x];
    }
  }
  return out;
}

MatrixField DiscreteGradientKernel::gonzalez(const MatrixField& p_new) const {
  const auto& g = old_.grid();
  const FrameField mid = field_cast<FrameField>(midpoint(field_cast<MatrixField>(old_), p_new));
  MatrixField out = continuous_variation(mid, rc_);
  const MatrixField dp = difference(p_new, field_cast<MatrixField>(old_));
  const double dd = spectral::inner(dp, dp);
  if (dd < 1e-12 * g.volume()) return out;
  const double dF = total_energy(field_cast<FrameField>(p_new), rc_).F - old_energy_;
  const double c = (dF - spectral::inner(out, dp)) / dd;
  for (std::size_t x = 0; x < out.size(); ++x) out[x] += c * dp[x];
  return out;
}

MatrixField biaxial_discrete_gradient(const FrameField& p_old, const FrameField& p_new,
                                      const ReducedCoefficients& rc) {
  return DiscreteGradientKernel(p_old, rc)(field_cast<MatrixField>(p_new));
}

MatrixField gonzalez_discrete_gradient(const FrameField& p_old, const FrameField& p_new,
                                       const ReducedCoefficients& rc) {
  return DiscreteGradientKernel(p_old, rc, GradientKind::Gonzalez)(field_cast<MatrixField>(p_new));
}

}  // namespace framewalk
