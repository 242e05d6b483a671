#pragma once

#include <array>

#include "framewalk/elasticity.hpp"
#include "framewalk/field.hpp"

/// Closed-form frame path on [0, 2 pi]^3 used for convergence studies.
///
/// With a = sin(x1 + t) cos x2 sin x3 and b = cos x1 sin(x2 + t) cos x3,
///   n1 = (sin a cos b, sin a sin b, cos a)
///   n2 = (cos a cos b, cos a sin b, -sin a)
///   n3 = (-sin b, cos b, 0).
namespace framewalk {

FrameField manufactured_frame(double t, const SpectralGrid& grid);
/// d p / d t of manufactured_frame.
MatrixField manufactured_rate(double t, const SpectralGrid& grid);

/// Variational derivative of the reformulated energy at the exact solution,
/// evaluated pointwise from closed-form second derivatives (no grid
/// differentiation).
MatrixField manufactured_variation(double t, const SpectralGrid& grid, const ReducedCoefficients& rc);

/// f = dp/dt - p A[p], so that the exact path solves dp/dt = p A[p] + f.
/// A[p] uses the closed-form variation.
MatrixField forcing_term(double t, const SpectralGrid& grid, const ReducedCoefficients& rc,
                         const std::array<double, 3>& chi);
/// Same as forcing_term but with the variation computed spectrally on `grid`.
MatrixField forcing_term_spectral(double t, const SpectralGrid& grid, const ReducedCoefficients& rc,
                                  const std::array<double, 3>& chi);

}  // namespace framewalk
