#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "framewalk/elasticity.hpp"
#include "framewalk/field.hpp"
#include "framewalk/frame.hpp"

namespace fwtest {

using namespace framewalk;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline SpectralGrid periodic_cube(int n) { return SpectralGrid(GridSpec::cube(n, 0.0, kTwoPi)); }

/// n1 = (cos x3, sin x3, 0), n2 = (-sin x3, cos x3, 0), n3 = e3.
inline FrameField helix(const SpectralGrid& g) {
  FrameField p(g, Mat3::Identity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double z = g.coordinate(i)[2];
    p[i] << std::cos(z), -std::sin(z), 0.0, std::sin(z), std::cos(z), 0.0, 0.0, 0.0, 1.0;
  }
  return p;
}

inline ElasticCoefficients random_coefficients(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ElasticCoefficients c;
  for (double& k : c.K) k = u(rng);
  return c;
}

template <class A, class B>
double max_diff(const A& a, const B& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return m;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class A>
double max_abs(const A& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

inline double max_abs(const ScalarField& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

template <class F>
ScalarField sample(const SpectralGrid& g, F f) {
  ScalarField s(g, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(g.coordinate(i));
  return s;
}

template <class F>
VectorField sample_vector(const SpectralGrid& g, F f) {
  VectorField v(g, Vec3::Zero());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.coordinate(i));
  return v;
}

/// Low-mode random data, so products stay resolved on small grids.
inline VectorField band_limited(const SpectralGrid& g, std::mt19937_64& rng, int max_mode = 2) {
  std::normal_distribution<double> w(0.0, 1.0);
  std::uniform_int_distribution<int> m(-max_mode, max_mode);
  VectorField v(g, Vec3::Zero());
  for (int term = 0; term < 6; ++term) {
    std::array<double, 3> k{};
    for (int a = 0; a < 3; ++a) k[a] = g.count(a) > 1 ? kTwoPi * m(rng) / g.extent(a) : 0.0;
    const Vec3 amp(w(rng), w(rng), w(rng));
    const double phase = w(rng);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto x = g.coordinate(i);
      v[i] += amp * std::cos(k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + phase);
    }
  }
  return v;
}

}  // namespace fwtest
