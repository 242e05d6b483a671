#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace framewalk {

using Complex = std::complex<double>;

/// Geometry of a periodic box [origin, origin + extent) sampled on a uniform
/// tensor-product grid.
struct GridSpec {
  std::array<int, 3> counts{1, 1, 1};
  std::array<double, 3> extents{1.0, 1.0, 1.0};
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  /// Zero every derivative mode above |m| > N/3 on each axis.
  bool dealias = false;

  static GridSpec cube(int n, double lo, double hi);
  static GridSpec cube(std::array<int, 3> counts, double lo, double hi);
};

/// Periodic collocation grid with Fourier differentiation tables.
///
/// Node (i, j, k) sits at origin + (i, j, k) * extent / count and has
/// flat index (i * N2 + j) * N3 + k. Real-to-complex transforms halve the
/// last axis, so the spectral layout has N1 * N2 * (N3 / 2 + 1) modes.
///
/// The grid is a cheap handle: copies share one immutable set of transform
/// plans, which are safe to execute concurrently on distinct buffers.
class SpectralGrid {
 public:
  explicit SpectralGrid(const GridSpec& spec);

  const GridSpec& spec() const;
  int count(int axis) const { return spec().counts[axis]; }
  double extent(int axis) const { return spec().extents[axis]; }
  std::size_t size() const;
  std::size_t spectral_size() const;
  double volume() const;
  std::size_t index(int i, int j, int k) const;
  std::array<double, 3> coordinate(std::size_t node) const;

  /// Derivative wavenumbers per spectral mode (2 pi m / L, Nyquist zeroed).
  std::span<const double> wavenumbers(int axis) const;
  /// Sum of squared derivative wavenumbers per mode.
  std::span<const double> wavenumber_squared() const;

  /// Unnormalised forward transform of one real scalar sampled at the nodes.
  std::vector<Complex> forward(std::span<const double> values) const;
  /// Inverse transform including the 1/N normalisation. Consumes `modes`.
  void inverse(std::vector<Complex> modes, std::span<double> out) const;

  bool operator==(const SpectralGrid& other) const;
  bool operator!=(const SpectralGrid& other) const { return !(*this == other); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Throws GridMismatch unless both grids describe the same discretisation.
void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* where);

/// Number of worker threads requested through FRAMEWALK_THREADS (default 1).
int requested_threads();

}  // namespace framewalk
