#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "framewalk/elasticity.hpp"
#include "framewalk/spectral.hpp"
#include "helpers.hpp"

using namespace framewalk;
using fwtest::kTwoPi;
using fwtest::max_abs;

namespace {

ElasticCoefficients with_K(std::array<double, 12> K) {
  ElasticCoefficients c;
  c.K = K;
  return c;
}

MatrixField random_direction(const SpectralGrid& g, std::mt19937_64& rng) {
  MatrixField q(g, Mat3::Zero());
  for (int c = 0; c < 3; ++c) {
    const VectorField v = fwtest::band_limited(g, rng, 1);
    for (std::size_t i = 0; i < q.size(); ++i) q[i].col(c) = v[i];
  }
  return q;
}

// p'(x) = R p(R^T x) for the quarter turn R about x3 on a periodic cube.
FrameField quarter_turn(const FrameField& p) {
  const auto& g = p.grid();
  const int n = g.count(0);
  Mat3 R;
  R << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  FrameField out = p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < g.count(2); ++k) out[g.index(i, j, k)] = R * p[g.index(j, (n - i) % n, k)];
  return out;
}

}  // namespace

TEST_CASE("reduced coefficients of the degenerate set") {
  const auto rc = reduce_coefficients(with_K({1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}));
  CHECK(rc.gamma == std::array<double, 3>{1, 0, 0});
  CHECK(rc.k == std::array<double, 3>{0, 0, 0});
  for (const auto& row : rc.kk)
    for (double v : row) CHECK(v == 0.0);
  CHECK_FALSE(rc.has_twist_terms());
}

TEST_CASE("reduced coefficients of the all-ones set") {
  ElasticCoefficients c;
  c.K.fill(1.0);
  const auto rc = reduce_coefficients(c);
  CHECK(rc.gamma == std::array<double, 3>{1, 1, 1});
  CHECK(rc.k == std::array<double, 3>{0, 0, 0});
  CHECK_FALSE(rc.has_twist_terms());
}

TEST_CASE("reduced coefficients of the anisotropic set") {
  const auto rc =
      reduce_coefficients(with_K({0.05, 0.45, 3.75, 0.15, 0.35, 1.75, 5.55, 2.25, 3.955, 0.255, 1.955, 1.55}));
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-14; };
  CHECK(near(rc.gamma[0], 0.05));
  CHECK(near(rc.gamma[1], 0.35));
  CHECK(near(rc.gamma[2], 1.55));
  CHECK(near(rc.k[0], 0.0));
  CHECK(near(rc.k[1], 0.1));
  CHECK(near(rc.k[2], 2.2));
  CHECK(near(rc.kk[0][0], 0.10));
  CHECK(near(rc.kk[1][1], 0.0));
  CHECK(near(rc.kk[2][2], 0.2));
  CHECK(near(rc.kk[2][0], 5.5));
  CHECK(near(rc.kk[0][1], 1.9));
  CHECK(near(rc.kk[1][2], 2.405));
  CHECK(near(rc.kk[1][0], 0.205));
  CHECK(near(rc.kk[2][1], 1.605));
  CHECK(near(rc.kk[0][2], 0.0));
  CHECK(rc.has_twist_terms());
}

TEST_CASE("frank constants invert the reduction") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto c = fwtest::random_coefficients(rng, 0.0, 5.0);
    const auto back = frank_constants(reduce_coefficients(c));
    for (int m = 0; m < 12; ++m) CHECK(back[m] == doctest::Approx(c.K[m]).epsilon(1e-14));
  }
}

TEST_CASE("coefficient validation") {
  ElasticCoefficients c;
  c.K[5] = -0.1;
  CHECK_THROWS_AS(reduce_coefficients(c), InvalidInput);
  c.K[5] = std::nan("");
  CHECK_THROWS_AS(c.validate(), InvalidInput);
  c.K[5] = 0.0;
  c.chi[1] = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("homogeneous frame has no energy and no variation") {
  const SpectralGrid g = fwtest::periodic_cube(6);
  const FrameField p = frame_from_euler(g, 0.3, 1.1, -0.7);
  std::mt19937_64 rng(4);
  const auto rc = reduce_coefficients(fwtest::random_coefficients(rng, 0.0, 3.0));
  const auto e = total_energy(p, rc);
  CHECK(std::abs(e.F) <= 1e-20);
  CHECK(max_abs(continuous_variation(p, rc)) <= 1e-13);
  CHECK(std::abs(oseen_frank_energy(column(p, 0), 1.0, 1.0, 1.0)) <= 1e-20);
}

TEST_CASE("helix twist energy") {
  const SpectralGrid g = fwtest::periodic_cube(8);
  ElasticCoefficients c;
  c.K[3] = c.K[4] = 1.0;
  const auto e = total_energy(fwtest::helix(g), reduce_coefficients(c));
  const double vol = std::pow(kTwoPi, 3);
  CHECK(e.F == doctest::Approx(vol).epsilon(1e-13));
  CHECK(e.F3 == doctest::Approx(2 * vol).epsilon(1e-13));
  CHECK(std::abs(e.F1) + std::abs(e.F2) <= 1e-12);
}

TEST_CASE("helix variation with isotropic constants is the axis itself") {
  const SpectralGrid g = fwtest::periodic_cube(8);
  ElasticCoefficients c;
  c.K.fill(1.0);
  const FrameField p = fwtest::helix(g);
  const MatrixField G = continuous_variation(p, reduce_coefficients(c));
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    worst = std::max(worst, (G[i].col(0) - p[i].col(0)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (G[i].col(1) - p[i].col(1)).cwiseAbs().maxCoeff());
    worst = std::max(worst, G[i].col(2).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("variation matches a central difference of the energy") {
  std::mt19937_64 rng(8);
  const SpectralGrid g = fwtest::periodic_cube(8);
  for (int trial = 0; trial < 4; ++trial) {
    const auto rc = reduce_coefficients(fwtest::random_coefficients(rng, 0.0, 3.0));
    const FrameField p = random_smooth_frame(g, rng, 0.6, 1, 4);
    const MatrixField q = random_direction(g, rng);
    const double s = 1e-5;
    FrameField plus = p, minus = p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      plus[i] += s * q[i];
      minus[i] -= s * q[i];
    }
    const double fd = (total_energy(plus, rc).F - total_energy(minus, rc).F) / (2 * s);
    const double an = spectral::inner(continuous_variation(p, rc), field_cast<FrameField>(q));
    CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an));
  }
}

TEST_CASE("twelve-constant density equals the reformulated one on frames") {
  std::mt19937_64 rng(12);
  const SpectralGrid g = fwtest::periodic_cube(10);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = fwtest::random_coefficients(rng, 0.0, 4.0);
    const FrameField p = random_smooth_frame(g, rng, 0.6, 1, 4);
    const double a = total_energy(p, reduce_coefficients(c)).F;
    const double b = frank_energy(p, c.K);
    CHECK(std::abs(a - b) <= 1e-11 * (1.0 + b));
  }
}

TEST_CASE("energy is non-negative for non-negative constants") {
  std::mt19937_64 rng(13);
  const SpectralGrid g = fwtest::periodic_cube(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rc = reduce_coefficients(fwtest::random_coefficients(rng, 0.0, 5.0));
    const auto e = total_energy(random_smooth_frame(g, rng, 1.0, 2, 5), rc);
    CHECK(e.F >= 0.0);
    CHECK(e.F1 >= 0.0);
    CHECK(e.F2 >= 0.0);
    CHECK(e.F3 >= 0.0);
  }
}

TEST_CASE("isotropic energy is unchanged by a constant rotation of the frame") {
  std::mt19937_64 rng(14);
  const SpectralGrid g = fwtest::periodic_cube(8);
  ElasticCoefficients c;
  c.K.fill(1.3);
  const auto rc = reduce_coefficients(c);
  const FrameField p = random_smooth_frame(g, rng, 0.6, 1, 4);
  const Mat3 R = euler_matrix(0.7, -1.9, 2.4);
  FrameField q = p;
  for (auto& m : q) m = R * m;
  const double a = total_energy(p, rc).F, b = total_energy(q, rc).F;
  CHECK(std::abs(a - b) <= 1e-12 * a);
}

TEST_CASE("energy is unchanged by a rigid quarter turn of the sample") {
  std::mt19937_64 rng(15);
  const SpectralGrid g = fwtest::periodic_cube(8);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rc = reduce_coefficients(fwtest::random_coefficients(rng, 0.0, 3.0));
    const FrameField p = random_smooth_frame(g, rng, 0.6, 1, 4);
    const auto a = total_energy(p, rc), b = total_energy(quarter_turn(p), rc);
    CHECK(std::abs(a.F - b.F) <= 1e-12 * a.F);
    CHECK(std::abs(a.F3 - b.F3) <= 1e-12 * (1.0 + a.F3));
  }
}

TEST_CASE("oseen-frank energy of the helix") {
  const SpectralGrid g = fwtest::periodic_cube(8);
  const VectorField n = column(fwtest::helix(g), 0);
  CHECK(oseen_frank_energy(n, 0.0, 1.0, 0.0) == doctest::Approx(std::pow(kTwoPi, 3) / 2).epsilon(1e-13));
}

TEST_CASE("degenerate biaxial energy reduces to oseen-frank") {
  const SpectralGrid g(GridSpec::cube({24, 24, 1}, -1.0, 1.0));
  const FrameField p = initial_profile(Profile::RadialTwist, g);
  const double Fb = total_energy(p, reduce_coefficients(with_K({1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}))).F;
  const double Fo = oseen_frank_energy(column(p, 0), 1.0, 1.0, 1.0);
  CHECK(std::abs(Fb - Fo) <= 1e-12 * Fo);

  std::mt19937_64 rng(16);
  const SpectralGrid h = fwtest::periodic_cube(8);
  const FrameField q = random_smooth_frame(h, rng, 0.8, 1, 4);
  const double a = total_energy(q, reduce_coefficients(with_K({0.4, 0, 0, 2.1, 0, 0, 0.9, 0, 0, 0.9, 0, 0}))).F;
  CHECK(std::abs(a - oseen_frank_energy(column(q, 0), 0.4, 2.1, 0.9)) <= 1e-12 * (1.0 + a));
}

TEST_CASE("connection coefficient identities") {
  std::mt19937_64 rng(18);
  const SpectralGrid g = fwtest::periodic_cube(40);
  const FrameField p = random_smooth_frame(g, rng, 0.5, 1, 3);
  const MatrixField D = connection_coefficients(p);
  const FrameKinematics kin = frame_kinematics(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Mat3& d = D[i];
    const Mat3& tw = kin.twist[i];
    const Vec3& div = kin.div[i];
    worst = std::max(worst, std::abs(d(1, 1) + d(2, 2) - tw(0, 0)));
    worst = std::max(worst, std::abs(d(2, 2) + d(0, 0) - tw(1, 1)));
    worst = std::max(worst, std::abs(d(0, 0) + d(1, 1) - tw(2, 2)));
    worst = std::max(worst, std::abs(d(0, 1) + tw(1, 0)));
    worst = std::max(worst, std::abs(d(1, 0) - (div(2) - tw(1, 0))));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("uniform tensor-form constants convert to one half") {
  FrankTensorCoefficients kt;
  kt.Kiiii.fill(1.0);
  kt.Kijij.fill(1.0);
  const auto conv = kijkl_to_frank(kt);
  for (double k : conv.K) CHECK(k == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(conv.negative.empty());
  const auto zero = kijkl_to_frank(FrankTensorCoefficients{});
  for (double k : zero.K) CHECK(k == 0.0);
}

TEST_CASE("tensor-form conversion reports negative constants") {
  FrankTensorCoefficients kt;
  kt.Kiiii.fill(1.0);
  kt.Kijij.fill(1.0);
  kt.Kijji.fill(3.0);
  const auto conv = kijkl_to_frank(kt);
  CHECK_FALSE(conv.negative.empty());
  for (int m : conv.negative) CHECK(conv.K[m] < 0.0);
}

TEST_CASE("tensor form and converted constants give the same energy") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const SpectralGrid g = fwtest::periodic_cube(32);
  for (int trial = 0; trial < 2; ++trial) {
    FrankTensorCoefficients kt;
    for (double& v : kt.Kiiii) v = u(rng);
    for (double& v : kt.Kijij) v = u(rng);
    for (double& v : kt.Kijji) v = u(rng);
    const FrameField p = random_smooth_frame(g, rng, 0.6, 1, 4);
    const double a = tensor_form_energy(p, kt);
    const double b = frank_energy(p, kijkl_to_frank(kt).K);
    CHECK(std::abs(a - b) <= 1e-11 * std::abs(a));
  }
}
