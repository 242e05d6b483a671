#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "framewalk/spectral.hpp"
#include "helpers.hpp"

using namespace framewalk;
using namespace framewalk::spectral;
using fwtest::kTwoPi;
using fwtest::max_abs;
using fwtest::max_diff;
using fwtest::sample;
using fwtest::sample_vector;

namespace {

ScalarField random_nodes(const SpectralGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> w(0.0, 1.0);
  ScalarField f(g, 0.0);
  for (double& v : f) v = w(rng);
  return f;
}

}  // namespace

TEST_CASE("derivative of one Fourier mode") {
  const SpectralGrid g(GridSpec::cube({16, 1, 1}, 0.0, kTwoPi));
  const auto f = sample(g, [](auto x) { return std::sin(x[0]); });
  const auto d = partial_derivative(f, 0);
  CHECK(max_diff(d, sample(g, [](auto x) { return std::cos(x[0]); })) <= 1e-13);
}

TEST_CASE("derivative of a constant is zero") {
  const SpectralGrid g(GridSpec::cube(8, 0.0, 3.0));
  for (int a = 0; a < 3; ++a) CHECK(max_abs(partial_derivative(ScalarField(g, 4.2), a)) <= 1e-14);
}

TEST_CASE("chain rule on sin(sin x)") {
  const SpectralGrid g(GridSpec::cube({32, 1, 1}, 0.0, kTwoPi));
  const auto f = sample(g, [](auto x) { return std::sin(std::sin(x[0])); });
  const auto d = partial_derivative(f, 0);
  CHECK(max_diff(d, sample(g, [](auto x) { return std::cos(std::sin(x[0])) * std::cos(x[0]); })) <= 1e-10);
}

TEST_CASE("derivative along a collapsed axis is exactly zero") {
  const SpectralGrid g(GridSpec::cube({8, 8, 1}, 0.0, kTwoPi));
  std::mt19937_64 rng(1);
  const auto d = partial_derivative(random_nodes(g, rng), 2);
  for (double v : d) CHECK(v == 0.0);
}

TEST_CASE("bad axis is rejected") {
  const SpectralGrid g(GridSpec::cube(4, 0.0, 1.0));
  CHECK_THROWS_AS(partial_derivative(ScalarField(g, 0.0), 3), InvalidInput);
  CHECK_THROWS_AS(partial_derivative(ScalarField(g, 0.0), -1), InvalidInput);
}

TEST_CASE("curl and divergence of the twisted n3") {
  const SpectralGrid g(GridSpec::cube({16, 16, 1}, -1.0, 1.0));
  const auto v = sample_vector(g, [](auto x) { return Vec3(-std::sin(kTwoPi * x[1]), std::cos(kTwoPi * x[1]), 0.0); });
  const auto c = curl(v);
  const auto ce = sample_vector(g, [](auto x) { return Vec3(0.0, 0.0, kTwoPi * std::cos(kTwoPi * x[1])); });
  CHECK(max_diff(c, ce) <= 1e-12);
  const auto d = divergence(v);
  CHECK(max_diff(d, sample(g, [](auto x) { return -kTwoPi * std::sin(kTwoPi * x[1]); })) <= 1e-12);
}

TEST_CASE("constant vector field has no derivatives") {
  const SpectralGrid g(GridSpec::cube(6, 0.0, 2.0));
  const VectorField v(g, Vec3(1.0, -2.0, 0.5));
  CHECK(max_abs(divergence(v)) <= 1e-14);
  CHECK(max_abs(curl(v)) <= 1e-14);
  CHECK(max_abs(laplacian(v)) <= 1e-14);
}

TEST_CASE("helix axis is an eigenvector of curl") {
  const SpectralGrid g = fwtest::periodic_cube(8);
  const auto n1 = sample_vector(g, [](auto x) { return Vec3(std::cos(x[2]), std::sin(x[2]), 0.0); });
  const auto c = curl(n1);
  double worst = 0.0;
  for (std::size_t i = 0; i < n1.size(); ++i) {
    worst = std::max(worst, (c[i] + n1[i]).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(n1[i].dot(c[i]) + 1.0));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("laplacian of a mode") {
  const SpectralGrid g(GridSpec::cube(8, 0.0, kTwoPi));
  const auto f = sample(g, [](auto x) { return std::sin(x[0]) * std::cos(2 * x[1]) * std::sin(3 * x[2]); });
  const auto l = laplacian(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(l[i] + 14.0 * f[i]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("quadrature") {
  const SpectralGrid g = fwtest::periodic_cube(4);
  CHECK(integrate(ScalarField(g, 1.0)) == doctest::Approx(248.05021344239853).epsilon(1e-15));
  CHECK(std::abs(integrate(sample(g, [](auto x) { return std::sin(x[0]); }))) <= 1e-13);
  const double half = integrate(sample(g, [](auto x) { return std::sin(x[0]) * std::sin(x[0]); }));
  CHECK(half == doctest::Approx(124.02510672119926).epsilon(1e-14));
}

TEST_CASE("summation by parts holds for arbitrary nodal data") {
  std::mt19937_64 rng(17);
  for (const auto& spec : {GridSpec::cube(8, 0.0, 1.0), GridSpec::cube({9, 6, 4}, -1.0, 2.0)}) {
    const SpectralGrid g(spec);
    for (int axis = 0; axis < 3; ++axis) {
      const auto f = random_nodes(g, rng), h = random_nodes(g, rng);
      const auto df = partial_derivative(f, axis), dh = partial_derivative(h, axis);
      ScalarField a(g, 0.0), b(g, 0.0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        a[i] = f[i] * dh[i];
        b[i] = h[i] * df[i];
      }
      const double ia = integrate(a), ib = integrate(b);
      CHECK(std::abs(ia + ib) <= 1e-12 * (std::abs(ia) + std::abs(ib)));
    }
  }
}

TEST_CASE("div curl and curl grad vanish") {
  std::mt19937_64 rng(23);
  const SpectralGrid g(GridSpec::cube({10, 8, 6}, 0.0, kTwoPi));
  const auto v = fwtest::band_limited(g, rng, 3);
  const auto f = component(fwtest::band_limited(g, rng, 3), 0);
  CHECK(max_abs(divergence(curl(v))) <= 1e-12 * (1.0 + max_abs(v)));
  CHECK(max_abs(curl(gradient(f))) <= 1e-12 * (1.0 + max_abs(f)));
}

TEST_CASE("vector laplacian identity curl curl = grad div - lap") {
  std::mt19937_64 rng(29);
  const SpectralGrid g(GridSpec::cube(8, 0.0, kTwoPi));
  const auto v = fwtest::band_limited(g, rng, 2);
  const auto cc = curl(curl(v));
  const auto gd = grad_div(v);
  const auto l = laplacian(v);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, (cc[i] - gd[i] + l[i]).cwiseAbs().maxCoeff());
  CHECK(worst <= 1e-11);
}

TEST_CASE("jacobian columns are partial derivatives") {
  std::mt19937_64 rng(31);
  const SpectralGrid g(GridSpec::cube(6, 0.0, kTwoPi));
  const auto v = fwtest::band_limited(g, rng, 2);
  const auto J = jacobian(v);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto d = partial_derivative(component(v, a), b);
      double worst = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(J[i](a, b) - d[i]));
      CHECK(worst <= 1e-13);
    }
}

TEST_CASE("dealiasing removes high modes only") {
  GridSpec s = GridSpec::cube({12, 1, 1}, 0.0, kTwoPi);
  s.dealias = true;
  const SpectralGrid g(s);
  const auto lo = sample(g, [](auto x) { return std::sin(2 * x[0]); });
  CHECK(max_diff(partial_derivative(lo, 0), sample(g, [](auto x) { return 2 * std::cos(2 * x[0]); })) <= 1e-13);
  const auto hi = sample(g, [](auto x) { return std::sin(5 * x[0]); });
  CHECK(max_abs(partial_derivative(hi, 0)) <= 1e-13);
}

TEST_CASE("fields on different grids do not mix") {
  const SpectralGrid a(GridSpec::cube(4, 0.0, 1.0)), b(GridSpec::cube(4, 0.0, 2.0));
  CHECK(a != b);
  CHECK(a == SpectralGrid(GridSpec::cube(4, 0.0, 1.0)));
  CHECK_THROWS_AS(midpoint(ScalarField(a, 0.0), ScalarField(b, 0.0)), GridMismatch);
  CHECK_THROWS_AS(inner(VectorField(a, Vec3::Zero()), VectorField(b, Vec3::Zero())), GridMismatch);
}

TEST_CASE("thread count comes from the environment") {
  ::setenv("FRAMEWALK_THREADS", "3", 1);
  CHECK(requested_threads() == 3);
  ::setenv("FRAMEWALK_THREADS", "zero", 1);
  CHECK(requested_threads() == 1);
  ::unsetenv("FRAMEWALK_THREADS");
  CHECK(requested_threads() == 1);
}
