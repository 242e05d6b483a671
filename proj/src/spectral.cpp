#include "framewalk/spectral.hpp"

#include <numeric>

namespace framewalk::spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_axis(int axis) {
  if (axis < 0 || axis > 2) throw InvalidInput("derivative axis must be 0, 1 or 2");
}

Modes derive(const SpectralGrid& g, const Modes& in, int axis) {
  const auto k = g.wavenumbers(axis);
  Modes out(in.size());
  for (std::size_t m = 0; m < in.size(); ++m) out[m] = kI * k[m] * in[m];
  return out;
}

std::vector<double> to_nodes(const SpectralGrid& g, Modes modes) {
  std::vector<double> out(g.size());
  g.inverse(std::move(modes), out);
  return out;
}

}  // namespace

ScalarField partial_derivative(const ScalarField& f, int axis) {
  check_axis(axis);
  const auto& g = f.grid();
  if (g.count(axis) == 1) return zeros_scalar(g);
  return ScalarField(g, to_nodes(g, derive(g, g.forward(f.values()), axis)));
}

VectorField gradient(const ScalarField& f) {
  const auto& g = f.grid();
  const Modes modes = g.forward(f.values());
  VectorField out = zeros_vector(g);
  for (int a = 0; a < 3; ++a) {
    if (g.count(a) == 1) continue;
    const auto d = to_nodes(g, derive(g, modes, a));
    for (std::size_t i = 0; i < out.size(); ++i) out[i](a) = d[i];
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const auto& g = f.grid();
  Modes modes = g.forward(f.values());
  const auto k2 = g.wavenumber_squared();
  for (std::size_t m = 0; m < modes.size(); ++m) modes[m] *= -k2[m];
  return ScalarField(g, to_nodes(g, std::move(modes)));
}

VectorModes forward(const VectorField& v) {
  const auto& g = v.grid();
  std::vector<double> buf(v.size());
  VectorModes out;
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < v.size(); ++i) buf[i] = v[i](a);
    out[a] = g.forward(buf);
  }
  return out;
}

ScalarField divergence(const VectorField& v) {
  const auto& g = v.grid();
  const VectorModes modes = forward(v);
  Modes sum(g.spectral_size(), Complex{0.0, 0.0});
  for (int a = 0; a < 3; ++a) {
    const auto k = g.wavenumbers(a);
    for (std::size_t m = 0; m < sum.size(); ++m) sum[m] += kI * k[m] * modes[a][m];
  }
  return ScalarField(g, to_nodes(g, std::move(sum)));
}

VectorField curl(const SpectralGrid& g, const VectorModes& v) {
  const auto k0 = g.wavenumbers(0);
  const auto k1 = g.wavenumbers(1);
  const auto k2 = g.wavenumbers(2);
  const std::size_t nm = g.spectral_size();
  VectorField out = zeros_vector(g);
  Modes c(nm);
  for (int a = 0; a < 3; ++a) {
    for (std::size_t m = 0; m < nm; ++m) {
      switch (a) {
        case 0: c[m] = kI * (k1[m] * v[2][m] - k2[m] * v[1][m]); break;
        case 1: c[m] = kI * (k2[m] * v[0][m] - k0[m] * v[2][m]); break;
        default: c[m] = kI * (k0[m] * v[1][m] - k1[m] * v[0][m]); break;
      }
    }
    const auto nodes = to_nodes(g, c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i](a) = nodes[i];
  }
  return out;
}

VectorField curl(const VectorField& v) { return curl(v.grid(), forward(v)); }

VectorField elliptic(const SpectralGrid& g, const VectorModes& v, double gamma, double kdiv) {
  const std::array<std::span<const double>, 3> k{g.wavenumbers(0), g.wavenumbers(1),
                                                 g.wavenumbers(2)};
  const auto k2 = g.wavenumber_squared();
  const std::size_t nm = g.spectral_size();
  Modes div(nm);
  for (std::size_t m = 0; m < nm; ++m)
    div[m] = k[0][m] * v[0][m] + k[1][m] * v[1][m] + k[2][m] * v[2][m];
  VectorField out = zeros_vector(g);
  Modes c(nm);
  for (int a = 0; a < 3; ++a) {
    // -gamma * (-|k|^2) v_a - kdiv * (i k_a)(i k . v) = gamma |k|^2 v_a + kdiv k_a (k . v)
    for (std::size_t m = 0; m < nm; ++m) c[m] = gamma * k2[m] * v[a][m] + kdiv * k[a][m] * div[m];
    const auto nodes = to_nodes(g, c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i](a) = nodes[i];
  }
  return out;
}

VectorField laplacian(const VectorField& v) {
  VectorField out = elliptic(v.grid(), forward(v), 1.0, 0.0);
  for (auto& x : out) x = -x;
  return out;
}

VectorField grad_div(const VectorField& v) {
  VectorField out = elliptic(v.grid(), forward(v), 0.0, 1.0);
  for (auto& x : out) x = -x;
  return out;
}

MatrixField jacobian(const VectorField& v) {
  const auto& g = v.grid();
  const VectorModes modes = forward(v);
  MatrixField out = zeros_matrix(g);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (g.count(b) == 1) continue;
      const auto d = to_nodes(g, derive(g, modes[a], b));
      for (std::size_t i = 0; i < out.size(); ++i) out[i](a, b) = d[i];
    }
  return out;
}

double integrate(const ScalarField& f) {
  const auto& v = f.values();
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  return sum / double(v.size()) * f.grid().volume();
}

double inner(const VectorField& u, const VectorField& v) {
  require_same_grid(u.grid(), v.grid(), "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i].dot(v[i]);
  return sum / double(u.size()) * u.grid().volume();
}

namespace {
template <class A, class B>
double frobenius_inner(const A& a, const B& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i].cwiseProduct(b[i]).sum();
  return sum / double(a.size()) * a.grid().volume();
}
}  // namespace

double inner(const MatrixField& a, const MatrixField& b) { return frobenius_inner(a, b); }
double inner(const MatrixField& a, const FrameField& b) { return frobenius_inner(a, b); }

}  // namespace framewalk::spectral
