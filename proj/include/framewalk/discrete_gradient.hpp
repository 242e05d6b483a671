#pragma once

#include "framewalk/elasticity.hpp"
#include "framewalk/field.hpp"

namespace framewalk {

/// beta(i, j) = ( n_i' . curl n_j' + n_i . curl n_j ) / 2 per node.
struct BetaTable {
  MatrixField beta;
};

BetaTable beta_mid(const FrameField& p_old, const FrameField& p_new);

/// Biaxial two-state gradient. Column i is
///   -gamma_i lap m_i - k_i grad div m_i + sum_j k_ji curl(beta_ji m_j)
///   + sum_j k_ij beta_ij curl m_j,
/// with m = (p_old + p_new) / 2. Its pairing with p_new - p_old equals the
/// energy difference to round-off.
MatrixField biaxial_discrete_gradient(const FrameField& p_old, const FrameField& p_new,
                                      const ReducedCoefficients& rc);

/// Midpoint variation plus the scalar correction
///   (dF - <G(m), dp>) / <dp, dp> * dp.
/// Falls back to the uncorrected midpoint variation when <dp, dp> is below
/// 1e-12 |Omega|.
MatrixField gonzalez_discrete_gradient(const FrameField& p_old, const FrameField& p_new,
                                       const ReducedCoefficients& rc);

enum class GradientKind { Biaxial, Gonzalez };

/// Repeated evaluation of a two-state gradient against one fixed old state.
/// The old-state transforms and energy are computed once.
class DiscreteGradientKernel {
 public:
  DiscreteGradientKernel(const FrameField& p_old, const ReducedCoefficients& rc,
                         GradientKind kind = GradientKind::Biaxial);

  /// Accepts any 3x3 field as the new state (the forced residual iterates
  /// are not orthonormal).
  MatrixField operator()(const MatrixField& p_new) const;

  const FrameField& old_state() const { return old_; }
  double old_energy() const { return old_energy_; }

 private:
  MatrixField biaxial(const MatrixField& p_new) const;
  MatrixField gonzalez(const MatrixField& p_new) const;

  FrameField old_;
  ReducedCoefficients rc_;
  GradientKind kind_;
  MatrixField elliptic_old_;
  MatrixField curl_old_;
  MatrixField twist_old_;
  double old_energy_ = 0.0;
};

}  // namespace framewalk
