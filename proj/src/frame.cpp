#include "framewalk/frame.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "framewalk/manufactured.hpp"

namespace framewalk {

Mat3 euler_matrix(double theta, double phi, double psi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double cs = std::cos(psi), ss = std::sin(psi);
  Mat3 p;
  p << ct * cf * cs - sf * ss, -ct * cf * ss - sf * cs, st * cf,
       ct * sf * cs + cf * ss, -ct * sf * ss + cf * cs, st * sf,
       -st * cs, st * ss, ct;
  return p;
}

FrameField frame_from_euler(const EulerAngles& angles) {
  const auto& g = angles.theta.grid();
  require_same_grid(g, angles.phi.grid(), "frame_from_euler");
  require_same_grid(g, angles.psi.grid(), "frame_from_euler");
  FrameField p(g, Mat3::Identity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = angles.theta[i], f = angles.phi[i], s = angles.psi[i];
    if (!std::isfinite(t) || !std::isfinite(f) || !std::isfinite(s))
      throw InvalidInput("frame_from_euler: non-finite angle at node " + std::to_string(i));
    p[i] = euler_matrix(t, f, s);
  }
  return p;
}

FrameField frame_from_euler(const SpectralGrid& grid, double theta, double phi, double psi) {
  return frame_from_euler(
      EulerAngles{ScalarField(grid, theta), ScalarField(grid, phi), ScalarField(grid, psi)});
}

Mat3 spherical_frame(double a, double b) {
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  Mat3 p;
  p.col(0) << sa * cb, sa * sb, ca;
  p.col(1) << ca * cb, ca * sb, -sa;
  p.col(2) << -sb, cb, 0.0;
  return p;
}

double orthonormality_error(const FrameField& p) {
  double err = 0.0;
  for (const Mat3& m : p)
    err = std::max(err, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
  return err;
}

double determinant_error(const FrameField& p) {
  double err = 0.0;
  for (const Mat3& m : p) err = std::max(err, std::abs(m.determinant() - 1.0));
  return err;
}

Mat3 skew(const Vec3& w) {
  Mat3 a;
  a << 0.0, w(2), -w(1),
       -w(2), 0.0, w(0),
       w(1), -w(0), 0.0;
  return a;
}

Vec3 unskew(const Mat3& a) { return Vec3(a(1, 2), -a(0, 2), a(0, 1)); }

std::array<Mat3, 3> tangent_vectors(const Mat3& p) {
  const Vec3 n1 = p.col(0), n2 = p.col(1), n3 = p.col(2);
  std::array<Mat3, 3> v;
  v[0] << Vec3::Zero(), n3, -n2;
  v[1] << -n3, Vec3::Zero(), n1;
  v[2] << n2, -n1, Vec3::Zero();
  return v;
}

TangentBasis tangent_basis(const FrameField& p) {
  TangentBasis tb{{zeros_matrix(p.grid()), zeros_matrix(p.grid()), zeros_matrix(p.grid())}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto v = tangent_vectors(p[i]);
    for (int k = 0; k < 3; ++k) tb.V[k][i] = v[k];
  }
  return tb;
}

std::array<Mat3, 3> so3_basis() {
  std::array<Mat3, 3> t;
  t[0] << 0, 1, 0, -1, 0, 0, 0, 0, 0;
  t[1] << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  t[2] << 0, 0, 0, 0, 0, 1, 0, -1, 0;
  return t;
}

FrameField random_smooth_frame(const SpectralGrid& grid, std::mt19937_64& rng, double amplitude,
                               int max_mode, int terms) {
  std::normal_distribution<double> weight(0.0, amplitude);
  std::uniform_int_distribution<int> mode(-max_mode, max_mode);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  EulerAngles a{ScalarField(grid, 0.0), ScalarField(grid, 0.0), ScalarField(grid, 0.0)};
  for (ScalarField* f : {&a.theta, &a.phi, &a.psi}) {
    // Random base angle so the frames are not clustered around the identity.
    const double base = phase(rng);
    for (auto& v : *f) v = base;
    for (int t = 0; t < terms; ++t) {
      const double w = weight(rng), ph = phase(rng);
      const int m0 = mode(rng), m1 = mode(rng), m2 = mode(rng);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.coordinate(i);
        double arg = ph;
        const int m[3] = {m0, m1, m2};
        for (int d = 0; d < 3; ++d)
          if (grid.count(d) > 1) arg += 2.0 * std::numbers::pi * m[d] * (x[d] - grid.spec().origin[d]) / grid.extent(d);
        (*f)[i] += w * std::cos(arg);
      }
    }
  }
  return frame_from_euler(a);
}

Profile parse_profile(std::string_view name) {
  if (name == "paper_eq_3_3" || name == "radial_twist") return Profile::RadialTwist;
  if (name == "paper_eq_3_4" || name == "planar_tilt") return Profile::PlanarTilt;
  if (name == "manufactured_t0" || name == "manufactured") return Profile::Manufactured;
  throw InvalidInput("unknown initial profile '" + std::string(name) + "'");
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::RadialTwist: return "paper_eq_3_3";
    case Profile::PlanarTilt: return "paper_eq_3_4";
    case Profile::Manufactured: return "manufactured_t0";
  }
  return "";
}

FrameField initial_profile(Profile profile, const SpectralGrid& grid) {
  using std::numbers::pi;
  if (profile == Profile::Manufactured) return manufactured_frame(0.0, grid);
  FrameField p(grid, Mat3::Identity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = grid.coordinate(i);
    if (profile == Profile::RadialTwist) {
      p[i] = spherical_frame(2.0 * std::sin(pi * x[0]), 2.0 * pi * x[1]);
    } else {
      const double c = pi * x[0] + 2.0 * std::cos(pi * x[1]);
      p[i].col(0) << std::sin(c), 0.0, std::cos(c);
      p[i].col(1) << std::cos(c), 0.0, -std::sin(c);
      p[i].col(2) << 0.0, 1.0, 0.0;
    }
  }
  return p;
}

FrameField initial_profile(std::string_view name, const SpectralGrid& grid) {
  return initial_profile(parse_profile(name), grid);
}

}  // namespace framewalk
