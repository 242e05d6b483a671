#include "framewalk/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <string>

#include "framewalk/error.hpp"

namespace framewalk {

namespace {

// FFTW planning is not thread-safe; execution on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void configure_fftw_threads() {
  static std::once_flag once;
  std::call_once(once, [] {
    const int n = requested_threads();
    if (n > 1 && fftw_init_threads() != 0) fftw_plan_with_nthreads(n);
  });
}

double signed_mode(int m, int n, bool halved_axis) {
  if (!halved_axis && m > n / 2) return m - n;
  return m;
}

}  // namespace

int requested_threads() {
  const char* env = std::getenv("FRAMEWALK_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

GridSpec GridSpec::cube(int n, double lo, double hi) { return cube({n, n, n}, lo, hi); }

GridSpec GridSpec::cube(std::array<int, 3> counts, double lo, double hi) {
  GridSpec s;
  s.counts = counts;
  s.extents = {hi - lo, hi - lo, hi - lo};
  s.origin = {lo, lo, lo};
  return s;
}

struct SpectralGrid::Impl {
  GridSpec spec;
  std::size_t n_real = 0;
  std::size_t n_modes = 0;
  std::array<std::vector<double>, 3> k;
  std::vector<double> k2;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

SpectralGrid::SpectralGrid(const GridSpec& spec) {
  for (int a = 0; a < 3; ++a) {
    if (spec.counts[a] < 1) throw InvalidInput("grid count must be >= 1 on every axis");
    if (!(spec.extents[a] > 0.0) || !std::isfinite(spec.extents[a]))
      throw InvalidInput("grid extent must be positive and finite");
    if (!std::isfinite(spec.origin[a])) throw InvalidInput("grid origin must be finite");
  }
  auto impl = std::make_shared<Impl>();
  impl->spec = spec;
  const int n1 = spec.counts[0], n2 = spec.counts[1], n3 = spec.counts[2];
  const int n3c = n3 / 2 + 1;
  impl->n_real = std::size_t(n1) * n2 * n3;
  impl->n_modes = std::size_t(n1) * n2 * n3c;

  const std::array<int, 3> mode_counts{n1, n2, n3c};
  std::array<std::vector<double>, 3> axis_k;
  for (int a = 0; a < 3; ++a) {
    const int n = spec.counts[a];
    axis_k[a].resize(mode_counts[a]);
    for (int m = 0; m < mode_counts[a]; ++m) {
      double mm = signed_mode(m, n, a == 2);
      if (n % 2 == 0 && std::abs(mm) == n / 2) mm = 0.0;
      if (spec.dealias && 3.0 * std::abs(mm) > n) mm = 0.0;
      axis_k[a][m] = 2.0 * std::numbers::pi * mm / spec.extents[a];
    }
  }
  for (auto& v : impl->k) v.resize(impl->n_modes);
  impl->k2.resize(impl->n_modes);
  std::size_t idx = 0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int l = 0; l < n3c; ++l, ++idx) {
        impl->k[0][idx] = axis_k[0][i];
        impl->k[1][idx] = axis_k[1][j];
        impl->k[2][idx] = axis_k[2][l];
        impl->k2[idx] = axis_k[0][i] * axis_k[0][i] + axis_k[1][j] * axis_k[1][j] +
                        axis_k[2][l] * axis_k[2][l];
      }

  configure_fftw_threads();
  {
    std::lock_guard lock(planner_mutex());
    double* rbuf = fftw_alloc_real(impl->n_real);
    fftw_complex* cbuf = fftw_alloc_complex(impl->n_modes);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl->r2c = fftw_plan_dft_r2c_3d(n1, n2, n3, rbuf, cbuf, flags);
    impl->c2r = fftw_plan_dft_c2r_3d(n1, n2, n3, cbuf, rbuf, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
  if (!impl->r2c || !impl->c2r) throw std::runtime_error("FFTW plan creation failed");
  impl_ = std::move(impl);
}

const GridSpec& SpectralGrid::spec() const { return impl_->spec; }
std::size_t SpectralGrid::size() const { return impl_->n_real; }
std::size_t SpectralGrid::spectral_size() const { return impl_->n_modes; }

double SpectralGrid::volume() const {
  const auto& e = impl_->spec.extents;
  return e[0] * e[1] * e[2];
}

std::size_t SpectralGrid::index(int i, int j, int k) const {
  const auto& c = impl_->spec.counts;
  return (std::size_t(i) * c[1] + j) * c[2] + k;
}

std::array<double, 3> SpectralGrid::coordinate(std::size_t node) const {
  const auto& s = impl_->spec;
  const std::size_t k = node % s.counts[2];
  const std::size_t j = (node / s.counts[2]) % s.counts[1];
  const std::size_t i = node / (std::size_t(s.counts[2]) * s.counts[1]);
  return {s.origin[0] + double(i) * s.extents[0] / s.counts[0],
          s.origin[1] + double(j) * s.extents[1] / s.counts[1],
          s.origin[2] + double(k) * s.extents[2] / s.counts[2]};
}

std::span<const double> SpectralGrid::wavenumbers(int axis) const { return impl_->k[axis]; }
std::span<const double> SpectralGrid::wavenumber_squared() const { return impl_->k2; }

std::vector<Complex> SpectralGrid::forward(std::span<const double> values) const {
  if (values.size() != impl_->n_real) throw GridMismatch("forward transform: size mismatch");
  std::vector<double> in(values.begin(), values.end());
  std::vector<Complex> out(impl_->n_modes);
  fftw_execute_dft_r2c(impl_->r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

void SpectralGrid::inverse(std::vector<Complex> modes, std::span<double> out) const {
  if (modes.size() != impl_->n_modes || out.size() != impl_->n_real)
    throw GridMismatch("inverse transform: size mismatch");
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(modes.data()), out.data());
  const double scale = 1.0 / double(impl_->n_real);
  for (double& v : out) v *= scale;
}

bool SpectralGrid::operator==(const SpectralGrid& other) const {
  if (impl_ == other.impl_) return true;
  const auto& a = impl_->spec;
  const auto& b = other.impl_->spec;
  return a.counts == b.counts && a.extents == b.extents && a.origin == b.origin &&
         a.dealias == b.dealias;
}

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* where) {
  if (a != b) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

}  // namespace framewalk
