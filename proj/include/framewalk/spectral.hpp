#pragma once

#include <array>
#include <vector>

#include "framewalk/field.hpp"

/// Fourier collocation calculus on periodic boxes.
///
/// Every first derivative is D = F^-1 diag(i k) F with the Nyquist mode
/// zeroed, so D is real and skew-adjoint under the node-mean inner product.
/// Second derivatives are compositions of first derivatives (Laplacian is
/// div(grad)), which keeps summation by parts exact on the grid.
namespace framewalk::spectral {

/// Axis is 0, 1 or 2. Throws InvalidInput otherwise.
ScalarField partial_derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);

ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
VectorField laplacian(const VectorField& v);
/// grad(div v).
VectorField grad_div(const VectorField& v);
/// J(a, b) = d v_a / d x_b per node.
MatrixField jacobian(const VectorField& v);

/// Mean over nodes times the box volume.
double integrate(const ScalarField& f);
/// Integral of u . v.
double inner(const VectorField& u, const VectorField& v);
/// Integral of the Frobenius pairing A : B.
double inner(const MatrixField& a, const MatrixField& b);
double inner(const MatrixField& a, const FrameField& b);

// Mode-space building blocks shared by the energy and gradient kernels.

using Modes = std::vector<Complex>;
using VectorModes = std::array<Modes, 3>;

VectorModes forward(const VectorField& v);
/// Transform the three components of column `c` of every node.
template <class F>
VectorModes forward_column(const F& m, int c) {
  std::vector<double> buf(m.size());
  VectorModes out;
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < m.size(); ++i) buf[i] = m[i](a, c);
    out[a] = m.grid().forward(buf);
  }
  return out;
}

VectorField curl(const SpectralGrid& g, const VectorModes& v);
/// -gamma * lap(v) - k * grad(div v) evaluated from the modes of v.
VectorField elliptic(const SpectralGrid& g, const VectorModes& v, double gamma, double k);

}  // namespace framewalk::spectral
