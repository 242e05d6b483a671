#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "framewalk/frame.hpp"
#include "helpers.hpp"

using namespace framewalk;
using fwtest::kTwoPi;

TEST_CASE("euler matrix at zero angles is the identity") {
  const SpectralGrid g(GridSpec::cube(4, 0.0, 1.0));
  const FrameField p = frame_from_euler(g, 0.0, 0.0, 0.0);
  for (const auto& m : p) CHECK(m == Mat3::Identity());
}

TEST_CASE("euler matrix for a quarter turn in theta") {
  Mat3 expect;
  expect << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  const Mat3 m = euler_matrix(std::numbers::pi / 2, 0.0, 0.0);
  CHECK((m - expect).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("random euler triples land in SO(3)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  double orth = 0.0, det = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat3 m = euler_matrix(u(rng), u(rng), u(rng));
    orth = std::max(orth, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
    det = std::max(det, std::abs(m.determinant() - 1.0));
  }
  CHECK(orth <= 1e-14);
  CHECK(det <= 1e-14);
}

TEST_CASE("non-finite euler angle is rejected") {
  const SpectralGrid g(GridSpec::cube(2, 0.0, 1.0));
  EulerAngles a{ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0)};
  a.phi[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(frame_from_euler(a), InvalidInput);
  CHECK_THROWS_AS(frame_from_euler(g, std::numeric_limits<double>::infinity(), 0.0, 0.0), InvalidInput);
}

TEST_CASE("orthonormality error of a stretched axis") {
  const SpectralGrid g(GridSpec::cube(2, 0.0, 1.0));
  FrameField p(g, Mat3::Identity());
  CHECK(orthonormality_error(p) == 0.0);
  for (auto& m : p) m.col(0) *= 1.1;
  CHECK(orthonormality_error(p) == doctest::Approx(0.21).epsilon(1e-14));
}

TEST_CASE("skew and unskew") {
  const Vec3 w(0.3, -1.2, 2.5);
  const Mat3 a = skew(w);
  CHECK(a(0, 1) == w(2));
  CHECK(a(0, 2) == -w(1));
  CHECK(a(1, 2) == w(0));
  CHECK((a + a.transpose()).isZero(0.0));
  CHECK(unskew(a) == w);
}

TEST_CASE("tangent basis against the canonical skew basis") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  const auto theta = so3_basis();
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 p = euler_matrix(u(rng), u(rng), u(rng));
    const auto V = tangent_vectors(p);
    // Theta numbering (1,2), (1,3), (2,3) against V1 = (0, n3, -n2) etc.
    CHECK((p * theta[0] + V[2]).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((p * theta[1] - V[1]).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((p * theta[2] + V[0]).cwiseAbs().maxCoeff() <= 1e-15);
    for (int k = 0; k < 3; ++k) {
      Vec3 e = Vec3::Zero();
      e(k) = 1.0;
      CHECK((p * skew(e) + V[k]).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }
}

TEST_CASE("tangent vectors are Frobenius-orthogonal with norm sqrt 2") {
  const Mat3 p = euler_matrix(0.4, 1.3, -2.2);
  const auto V = tangent_vectors(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(V[i].cwiseProduct(V[j]).sum() == doctest::Approx(i == j ? 2.0 : 0.0));
}

TEST_CASE("p^T (p Theta) is skew for any skew Theta") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat3 p = euler_matrix(u(rng), u(rng), u(rng));
    const Mat3 t = skew(Vec3(u(rng), u(rng), u(rng)));
    const Mat3 m = p.transpose() * (p * t);
    CHECK((m + m.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("tangent_basis field matches the nodewise vectors") {
  const SpectralGrid g(GridSpec::cube(4, 0.0, kTwoPi));
  std::mt19937_64 rng(5);
  const FrameField p = random_smooth_frame(g, rng);
  const TangentBasis tb = tangent_basis(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto V = tangent_vectors(p[i]);
    for (int k = 0; k < 3; ++k) CHECK(tb.V[k][i] == V[k]);
  }
}

TEST_CASE("radial twist profile at the origin") {
  const SpectralGrid g(GridSpec::cube({8, 8, 1}, -1.0, 1.0));
  const FrameField p = initial_profile(Profile::RadialTwist, g);
  const std::size_t origin = g.index(4, 4, 0);
  CHECK(g.coordinate(origin)[0] == 0.0);
  CHECK(g.coordinate(origin)[1] == 0.0);
  const Vec3 n3 = p[origin].col(2);
  CHECK(std::abs(n3(0)) <= 1e-15);
  CHECK(n3(1) == doctest::Approx(1.0));
  CHECK(n3(2) == 0.0);
}

TEST_CASE("planar tilt profile has constant n3") {
  const SpectralGrid g(GridSpec::cube({8, 8, 2}, -1.0, 1.0));
  const FrameField p = initial_profile(Profile::PlanarTilt, g);
  for (const auto& m : p) CHECK(m.col(2) == Vec3(0.0, 1.0, 0.0));
}

TEST_CASE("every profile is orthonormal") {
  for (const char* name : {"paper_eq_3_3", "paper_eq_3_4", "manufactured_t0"}) {
    const bool unit_box = std::string_view(name).starts_with("paper");
    const SpectralGrid g(GridSpec::cube(6, unit_box ? -1.0 : 0.0, unit_box ? 1.0 : kTwoPi));
    const FrameField p = initial_profile(name, g);
    CHECK(orthonormality_error(p) <= 1e-14);
    CHECK(determinant_error(p) <= 1e-14);
    CHECK(profile_name(parse_profile(name)) == name);
  }
  CHECK_THROWS_AS(parse_profile("no_such_profile"), InvalidInput);
}

TEST_CASE("random smooth frames are orthonormal") {
  const SpectralGrid g(GridSpec::cube(6, 0.0, kTwoPi));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5; ++i) {
    const FrameField p = random_smooth_frame(g, rng, 0.8, 2, 6);
    CHECK(orthonormality_error(p) <= 1e-14);
  }
}
