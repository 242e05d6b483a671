#include "framewalk/elasticity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framewalk/spectral.hpp"

namespace framewalk {

namespace {

// Family of each K: index into gamma, and the slot it feeds.
// K1..K3 -> k_i; K4..K6 -> k_ii; K7 -> k31, K8 -> k12, K9 -> k23;
// K10 -> k21, K11 -> k32, K12 -> k13.
struct Slot {
  int family;
  int row;  // -1 for the divergence coefficient k_i
  int col;
};

constexpr std::array<Slot, 12> kSlots{{{0, -1, 0},
                                       {1, -1, 1},
                                       {2, -1, 2},
                                       {0, 0, 0},
                                       {1, 1, 1},
                                       {2, 2, 2},
                                       {0, 2, 0},
                                       {1, 0, 1},
                                       {2, 1, 2},
                                       {0, 1, 0},
                                       {1, 2, 1},
                                       {2, 0, 2}}};

double mean_times_volume(const SpectralGrid& g, double sum) {
  return sum / double(g.size()) * g.volume();
}

}  // namespace

void ElasticCoefficients::validate() const {
  for (int m = 0; m < 12; ++m)
    if (!std::isfinite(K[m]) || K[m] < 0.0)
      throw InvalidInput("elastic coefficient K" + std::to_string(m + 1) + " must be finite and >= 0");
  for (int m = 0; m < 3; ++m)
    if (!std::isfinite(chi[m]) || chi[m] <= 0.0)
      throw InvalidInput("dissipation coefficient chi" + std::to_string(m + 1) + " must be > 0");
}

bool ReducedCoefficients::has_twist_terms() const {
  for (const auto& row : kk)
    for (double v : row)
      if (v != 0.0) return true;
  return false;
}

ReducedCoefficients reduce_coefficients(const ElasticCoefficients& K) {
  K.validate();
  ReducedCoefficients rc;
  for (int f = 0; f < 3; ++f)
    rc.gamma[f] = std::min({K.K[f], K.K[f + 3], K.K[f + 6], K.K[f + 9]});
  for (int m = 0; m < 12; ++m) {
    const Slot s = kSlots[m];
    const double excess = K.K[m] - rc.gamma[s.family];
    if (s.row < 0)
      rc.k[s.col] = excess;
    else
      rc.kk[s.row][s.col] = excess;
  }
  return rc;
}

std::array<double, 12> frank_constants(const ReducedCoefficients& rc) {
  std::array<double, 12> K{};
  for (int m = 0; m < 12; ++m) {
    const Slot s = kSlots[m];
    K[m] = rc.gamma[s.family] + (s.row < 0 ? rc.k[s.col] : rc.kk[s.row][s.col]);
  }
  return K;
}

FrankConversion kijkl_to_frank(const FrankTensorCoefficients& kt) {
  const double a = kt.Kiiii[0], b = kt.Kiiii[1], c = kt.Kiiii[2];
  const double k1212 = kt.Kijij[0], k2121 = kt.Kijij[1], k2323 = kt.Kijij[2];
  const double k3232 = kt.Kijij[3], k3131 = kt.Kijij[4], k1313 = kt.Kijij[5];
  const double k1221 = kt.Kijji[0], k2332 = kt.Kijji[1], k1331 = kt.Kijji[2];
  FrankConversion out;
  auto& K = out.K;
  K[0] = -a + b + c - k2332;
  K[1] = a - b + c - k1331;
  K[2] = a + b - c - k1221;
  K[3] = -a + b + c;
  K[4] = a - b + c;
  K[5] = a + b - c;
  K[6] = -a + b - c + 2.0 * k1313 + k1331;
  K[7] = -a - b + c + 2.0 * k2121 + k1221;
  K[8] = a - b - c + 2.0 * k3232 + k2332;
  K[9] = -a - b + c + 2.0 * k1212 + k1221;
  K[10] = a - b - c + 2.0 * k2323 + k2332;
  K[11] = -a + b - c + 2.0 * k3131 + k1331;
  for (int m = 0; m < 12; ++m) {
    K[m] *= 0.5;
    if (K[m] < 0.0) out.negative.push_back(m);
  }
  return out;
}

FrameKinematics frame_kinematics(const FrameField& p) {
  const auto& g = p.grid();
  FrameKinematics kin{{zeros_matrix(g), zeros_matrix(g), zeros_matrix(g)},
                      zeros_matrix(g),
                      zeros_vector(g),
                      zeros_matrix(g)};
  for (int i = 0; i < 3; ++i) kin.jac[i] = spectral::jacobian(column(p, i));
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (int j = 0; j < 3; ++j) {
      const Mat3& J = kin.jac[j][x];
      kin.div[x](j) = J.trace();
      kin.curl[x].col(j) = Vec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    }
    kin.twist[x] = p[x].transpose() * kin.curl[x];
  }
  return kin;
}

EnergyParts total_energy(const FrameField& p, const ReducedCoefficients& rc) {
  const FrameKinematics kin = frame_kinematics(p);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (int i = 0; i < 3; ++i) {
      s1 += rc.gamma[i] * kin.jac[i][x].squaredNorm();
      s2 += rc.k[i] * kin.div[x](i) * kin.div[x](i);
      for (int j = 0; j < 3; ++j) s3 += rc.kk[i][j] * kin.twist[x](i, j) * kin.twist[x](i, j);
    }
  }
  const auto& g = p.grid();
  EnergyParts e;
  e.F1 = mean_times_volume(g, s1);
  e.F2 = mean_times_volume(g, s2);
  e.F3 = mean_times_volume(g, s3);
  e.F = 0.5 * (e.F1 + e.F2 + e.F3);
  return e;
}

double frank_energy(const FrameField& p, const std::array<double, 12>& K) {
  const FrameKinematics kin = frame_kinematics(p);
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const Vec3& d = kin.div[x];
    const Mat3& s = kin.twist[x];
    for (int m = 0; m < 12; ++m) {
      const Slot sl = kSlots[m];
      const double inv = sl.row < 0 ? d(sl.col) : s(sl.row, sl.col);
      sum += K[m] * inv * inv;
    }
  }
  return 0.5 * mean_times_volume(p.grid(), sum);
}

MatrixField continuous_variation(const FrameField& p, const ReducedCoefficients& rc) {
  const auto& g = p.grid();
  const FrameKinematics kin = frame_kinematics(p);
  MatrixField out = zeros_matrix(g);
  for (int i = 0; i < 3; ++i) {
    const VectorField n = column(p, i);
    const VectorField lap = spectral::laplacian(n);
    const VectorField gd = spectral::grad_div(n);
    for (std::size_t x = 0; x < out.size(); ++x)
      out[x].col(i) = -rc.gamma[i] * lap[x] - rc.k[i] * gd[x];
    for (int j = 0; j < 3; ++j) {
      if (rc.kk[j][i] != 0.0) {
        VectorField u = zeros_vector(g);
        for (std::size_t x = 0; x < u.size(); ++x) u[x] = kin.twist[x](j, i) * p[x].col(j);
        const VectorField cu = spectral::curl(u);
        for (std::size_t x = 0; x < out.size(); ++x) out[x].col(i) += rc.kk[j][i] * cu[x];
      }
      if (rc.kk[i][j] != 0.0)
        for (std::size_t x = 0; x < out.size(); ++x)
          out[x].col(i) += rc.kk[i][j] * kin.twist[x](i, j) * kin.curl[x].col(j);
    }
  }
  return out;
}

double oseen_frank_energy(const VectorField& n, double K1, double K4, double K7) {
  const ScalarField div = spectral::divergence(n);
  const VectorField c = spectral::curl(n);
  double sum = 0.0;
  for (std::size_t x = 0; x < n.size(); ++x) {
    const double tw = n[x].dot(c[x]);
    sum += K1 * div[x] * div[x] + K4 * tw * tw + K7 * n[x].cross(c[x]).squaredNorm();
  }
  return 0.5 * mean_times_volume(n.grid(), sum);
}

MatrixField connection_coefficients(const FrameField& p) {
  static constexpr int kB[3] = {1, 2, 0};
  static constexpr int kC[3] = {2, 0, 1};
  const FrameKinematics kin = frame_kinematics(p);
  MatrixField D = zeros_matrix(p.grid());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        D[x](a, b) = p[x].col(kB[b]).dot(kin.jac[kC[b]][x] * p[x].col(a));
  return D;
}

double tensor_form_energy(const FrameField& p, const FrankTensorCoefficients& kt) {
  const MatrixField D = connection_coefficients(p);
  double sum = 0.0;
  for (const Mat3& d : D) {
    sum += kt.Kiiii[0] * d(0, 0) * d(0, 0) + kt.Kiiii[1] * d(1, 1) * d(1, 1) +
           kt.Kiiii[2] * d(2, 2) * d(2, 2);
    sum += kt.Kijij[0] * d(0, 1) * d(0, 1) + kt.Kijij[1] * d(1, 0) * d(1, 0) +
           kt.Kijij[2] * d(1, 2) * d(1, 2) + kt.Kijij[3] * d(2, 1) * d(2, 1) +
           kt.Kijij[4] * d(2, 0) * d(2, 0) + kt.Kijij[5] * d(0, 2) * d(0, 2);
    sum += kt.Kijji[0] * d(0, 1) * d(1, 0) + kt.Kijji[1] * d(1, 2) * d(2, 1) +
           kt.Kijji[2] * d(0, 2) * d(2, 0);
  }
  return 0.5 * mean_times_volume(p.grid(), sum);
}

}  // namespace framewalk
