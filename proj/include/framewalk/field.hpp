#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

#include "framewalk/error.hpp"
#include "framewalk/grid.hpp"

namespace framewalk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Per-node values of type T on a SpectralGrid, node-major. `Tag` keeps
/// fields of identical storage but different meaning (a frame versus a
/// gradient of the energy) from mixing silently.
template <class T, class Tag>
class NodeField {
 public:
  using value_type = T;

  NodeField(SpectralGrid grid, const T& fill) : grid_(std::move(grid)), data_(grid_.size(), fill) {}

  NodeField(SpectralGrid grid, std::vector<T> data) : grid_(std::move(grid)), data_(std::move(data)) {
    if (data_.size() != grid_.size()) throw GridMismatch("field data does not match grid size");
  }

  const SpectralGrid& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

 private:
  SpectralGrid grid_;
  std::vector<T> data_;
};

struct ScalarTag;
struct VectorTag;
struct MatrixTag;
struct FrameTag;

using ScalarField = NodeField<double, ScalarTag>;
using VectorField = NodeField<Vec3, VectorTag>;
/// Generic 3x3-per-node field: energy gradients, forcing, time derivatives.
using MatrixField = NodeField<Mat3, MatrixTag>;
/// Orthonormal frame p = (n1, n2, n3) per node, columns are the axes.
using FrameField = NodeField<Mat3, FrameTag>;

/// Reinterpret storage between fields of the same value type.
template <class To, class From>
To field_cast(const From& from) {
  return To(from.grid(), from.values());
}

inline ScalarField zeros_scalar(const SpectralGrid& g) { return ScalarField(g, 0.0); }
inline VectorField zeros_vector(const SpectralGrid& g) { return VectorField(g, Vec3::Zero()); }
inline MatrixField zeros_matrix(const SpectralGrid& g) { return MatrixField(g, Mat3::Zero()); }

/// Column `c` of a 3x3 field as a vector field.
template <class F>
VectorField column(const F& m, int c) {
  VectorField out(m.grid(), Vec3::Zero());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i].col(c);
  return out;
}

/// Component `c` of a vector field as a scalar field.
inline ScalarField component(const VectorField& v, int c) {
  ScalarField out(v.grid(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i](c);
  return out;
}

/// (a + b) / 2 nodewise.
template <class F>
F midpoint(const F& a, const F& b) {
  require_same_grid(a.grid(), b.grid(), "midpoint");
  F out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
  return out;
}

/// b - a nodewise, as a generic matrix field.
template <class F>
MatrixField difference(const F& b, const F& a) {
  require_same_grid(a.grid(), b.grid(), "difference");
  MatrixField out(a.grid(), Mat3::Zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[i] - a[i];
  return out;
}

}  // namespace framewalk
