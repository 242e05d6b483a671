#include "framewalk/manufactured.hpp"

#include <cmath>

#include "framewalk/frame.hpp"
#include "framewalk/integrator.hpp"

namespace framewalk {

namespace {

// Value, gradient and Hessian of a scalar function of x.
struct Jet2 {
  double v = 0.0;
  Vec3 g = Vec3::Zero();
  Mat3 h = Mat3::Zero();
};

// Value and gradient only.
struct Jet1 {
  double v = 0.0;
  Vec3 g = Vec3::Zero();
};

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.g = a.v * b.g + b.v * a.g;
  r.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

Jet2 operator-(const Jet2& a) { return {-a.v, -a.g, -a.h}; }

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return {s, c * a.g, c * a.h - s * a.g * a.g.transpose()};
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return {c, -s * a.g, -s * a.h - c * a.g * a.g.transpose()};
}

Jet2 variable(double x, int axis) {
  Jet2 r;
  r.v = x;
  r.g(axis) = 1.0;
  return r;
}

Jet2 shifted(Jet2 a, double s) {
  a.v += s;
  return a;
}

// d/dx_axis of a second-order jet.
Jet1 derive(const Jet2& a, int axis) { return {a.g(axis), a.h.col(axis)}; }

Jet1 operator*(const Jet1& a, const Jet1& b) { return {a.v * b.v, a.v * b.g + b.v * a.g}; }
Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.g + b.g}; }
Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.g - b.g}; }
Jet1 lift(const Jet2& a) { return {a.v, a.g}; }

using Vec2 = std::array<Jet2, 3>;
using Vec1 = std::array<Jet1, 3>;

std::array<Vec2, 3> frame_jets(const std::array<double, 3>& x, double t) {
  const Jet2 x1 = variable(x[0], 0), x2 = variable(x[1], 1), x3 = variable(x[2], 2);
  const Jet2 a = sin(shifted(x1, t)) * cos(x2) * sin(x3);
  const Jet2 b = cos(x1) * sin(shifted(x2, t)) * cos(x3);
  const Jet2 sa = sin(a), ca = cos(a), sb = sin(b), cb = cos(b);
  std::array<Vec2, 3> n;
  n[0] = {sa * cb, sa * sb, ca};
  n[1] = {ca * cb, ca * sb, -sa};
  n[2] = {-sb, cb, Jet2{}};
  return n;
}

Vec1 curl_of(const Vec2& v) {
  return {derive(v[2], 1) - derive(v[1], 2), derive(v[0], 2) - derive(v[2], 0),
          derive(v[1], 0) - derive(v[0], 1)};
}

Vec3 curl_of(const Vec1& v) {
  return {v[2].g(1) - v[1].g(2), v[0].g(2) - v[2].g(0), v[1].g(0) - v[0].g(1)};
}

Vec3 value(const Vec1& v) { return {v[0].v, v[1].v, v[2].v}; }

Jet1 dot(const Vec2& a, const Vec1& b) {
  return lift(a[0]) * b[0] + lift(a[1]) * b[1] + lift(a[2]) * b[2];
}

Mat3 variation_at(const std::array<double, 3>& x, double t, const ReducedCoefficients& rc) {
  const auto n = frame_jets(x, t);
  std::array<Vec1, 3> c;
  for (int j = 0; j < 3; ++j) c[j] = curl_of(n[j]);
  // s[i][j] = n_i . curl n_j with its gradient.
  std::array<std::array<Jet1, 3>, 3> s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = dot(n[i], c[j]);

  Mat3 grad;
  for (int i = 0; i < 3; ++i) {
    Vec3 g = Vec3::Zero();
    for (int a = 0; a < 3; ++a) {
      const double lap = n[i][a].h.trace();
      double graddiv = 0.0;
      for (int b = 0; b < 3; ++b) graddiv += n[i][b].h(a, b);
      g(a) = -rc.gamma[i] * lap - rc.k[i] * graddiv;
    }
    for (int j = 0; j < 3; ++j) {
      if (rc.kk[j][i] != 0.0) {
        Vec1 u;
        for (int a = 0; a < 3; ++a) u[a] = s[j][i] * lift(n[j][a]);
        g += rc.kk[j][i] * curl_of(u);
      }
      if (rc.kk[i][j] != 0.0) g += rc.kk[i][j] * s[i][j].v * value(c[j]);
    }
    grad.col(i) = g;
  }
  return grad;
}

struct Angles {
  double a, b, at, bt;
};

Angles angles_at(const std::array<double, 3>& x, double t) {
  const double c2 = std::cos(x[1]), s3 = std::sin(x[2]), c1 = std::cos(x[0]), c3 = std::cos(x[2]);
  return {std::sin(x[0] + t) * c2 * s3, c1 * std::sin(x[1] + t) * c3, std::cos(x[0] + t) * c2 * s3,
          c1 * std::cos(x[1] + t) * c3};
}

MatrixField forcing_from(const FrameField& p, const MatrixField& dpdt, const MatrixField& grad,
                         const std::array<double, 3>& chi) {
  const RateField omega = rotational_rate(p, grad, chi);
  MatrixField f = dpdt;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= p[i] * skew(omega[i]);
  return f;
}

}  // namespace

FrameField manufactured_frame(double t, const SpectralGrid& grid) {
  FrameField p(grid, Mat3::Identity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Angles g = angles_at(grid.coordinate(i), t);
    p[i] = spherical_frame(g.a, g.b);
  }
  return p;
}

MatrixField manufactured_rate(double t, const SpectralGrid& grid) {
  MatrixField r = zeros_matrix(grid);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Angles g = angles_at(grid.coordinate(i), t);
    const Mat3 p = spherical_frame(g.a, g.b);
    const Vec3 n1 = p.col(0), n2 = p.col(1), n3 = p.col(2);
    const double sa = std::sin(g.a), ca = std::cos(g.a), sb = std::sin(g.b), cb = std::cos(g.b);
    r[i].col(0) = g.at * n2 + g.bt * sa * n3;
    r[i].col(1) = -g.at * n1 + g.bt * ca * n3;
    r[i].col(2) = g.bt * Vec3(-cb, -sb, 0.0);
  }
  return r;
}

MatrixField manufactured_variation(double t, const SpectralGrid& grid, const ReducedCoefficients& rc) {
  MatrixField g = zeros_matrix(grid);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = variation_at(grid.coordinate(i), t, rc);
  return g;
}

MatrixField forcing_term(double t, const SpectralGrid& grid, const ReducedCoefficients& rc,
                         const std::array<double, 3>& chi) {
  return forcing_from(manufactured_frame(t, grid), manufactured_rate(t, grid),
                      manufactured_variation(t, grid, rc), chi);
}

MatrixField forcing_term_spectral(double t, const SpectralGrid& grid, const ReducedCoefficients& rc,
                                  const std::array<double, 3>& chi) {
  const FrameField p = manufactured_frame(t, grid);
  return forcing_from(p, manufactured_rate(t, grid), continuous_variation(p, rc), chi);
}

}  // namespace framewalk
