#pragma once

#include <array>
#include <vector>

#include "framewalk/field.hpp"

namespace framewalk {

/// The twelve Frank-type constants K1..K12 of the biaxial density and the
/// three rotational viscosities chi1..chi3. K[0] is K1.
struct ElasticCoefficients {
  std::array<double, 12> K{};
  std::array<double, 3> chi{2.0, 2.0, 2.0};

  /// Throws InvalidInput unless every K is finite and >= 0 and every chi > 0.
  void validate() const;
};

/// Coefficients of the reformulated density
///   1/2 sum_i gamma_i |grad n_i|^2 + 1/2 sum_i k_i (div n_i)^2
///   + 1/2 sum_ij k_ij (n_i . curl n_j)^2.
/// Indices are zero-based: kk[i][j] multiplies (n_{i+1} . curl n_{j+1})^2.
struct ReducedCoefficients {
  std::array<double, 3> gamma{};
  std::array<double, 3> k{};
  std::array<std::array<double, 3>, 3> kk{};

  bool has_twist_terms() const;
};

/// gamma_i is the smallest constant of its family; k and kk are the excesses.
ReducedCoefficients reduce_coefficients(const ElasticCoefficients& K);
/// Inverse of reduce_coefficients on the K part.
std::array<double, 12> frank_constants(const ReducedCoefficients& rc);

/// Tensor-form constants of the D_ij representation.
struct FrankTensorCoefficients {
  std::array<double, 3> Kiiii{};  ///< K1111, K2222, K3333
  std::array<double, 6> Kijij{};  ///< K1212, K2121, K2323, K3232, K3131, K1313
  std::array<double, 3> Kijji{};  ///< K1221, K2332, K1331
};

struct FrankConversion {
  std::array<double, 12> K{};
  /// Zero-based positions of negative entries of K.
  std::vector<int> negative;
};

/// Linear map from tensor-form constants to K1..K12. Negative outputs are
/// reported in `negative`, not rejected.
FrankConversion kijkl_to_frank(const FrankTensorCoefficients& kt);

struct EnergyParts {
  double F = 0.0;   ///< (F1 + F2 + F3) / 2
  double F1 = 0.0;  ///< sum gamma_i int |grad n_i|^2
  double F2 = 0.0;  ///< sum k_i int (div n_i)^2
  double F3 = 0.0;  ///< sum k_ij int (n_i . curl n_j)^2
};

/// Pointwise first-derivative data of a frame field.
struct FrameKinematics {
  /// jac[i](a, b) = d (n_i)_a / d x_b.
  std::array<MatrixField, 3> jac;
  /// Column j is curl n_j.
  MatrixField curl;
  /// Component i is div n_i.
  VectorField div;
  /// twist(i, j) = n_i . curl n_j.
  MatrixField twist;
};

FrameKinematics frame_kinematics(const FrameField& p);

EnergyParts total_energy(const FrameField& p, const ReducedCoefficients& rc);

/// Twelve-constant density without the null-Lagrangian terms,
/// 1/2 int sum K_m (invariant_m)^2.
double frank_energy(const FrameField& p, const std::array<double, 12>& K);

/// Columns are dF/dn_1, dF/dn_2, dF/dn_3 of the reformulated energy.
MatrixField continuous_variation(const FrameField& p, const ReducedCoefficients& rc);

/// 1/2 int K1 (div n)^2 + K4 (n . curl n)^2 + K7 |n x curl n|^2.
double oseen_frank_energy(const VectorField& n, double K1, double K4, double K7);

/// D(a, b) holds D_{a+1, b+1} = n_B . ((n_{a+1} . grad) n_C) with
/// (B, C) = (2, 3), (3, 1), (1, 2) for b = 0, 1, 2.
MatrixField connection_coefficients(const FrameField& p);

/// Integral of the tensor-form density 1/2 { sum K D^2 + cross terms }.
double tensor_form_energy(const FrameField& p, const FrankTensorCoefficients& kt);

}  // namespace framewalk
