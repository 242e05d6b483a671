#pragma once

#include <array>
#include <random>
#include <string_view>

#include "framewalk/field.hpp"

namespace framewalk {

/// Z-Y-Z style Euler angles per node, radians.
struct EulerAngles {
  ScalarField theta;
  ScalarField phi;
  ScalarField psi;
};

/// Rotation matrix of the Euler parameterisation; columns are n1, n2, n3.
Mat3 euler_matrix(double theta, double phi, double psi);

/// Nodewise Euler matrix. Throws InvalidInput on non-finite angles.
FrameField frame_from_euler(const EulerAngles& angles);
FrameField frame_from_euler(const SpectralGrid& grid, double theta, double phi, double psi);

/// Spherical frame (e_r, e_theta, e_phi) for polar angle a and azimuth b.
Mat3 spherical_frame(double polar, double azimuth);

/// Max over nodes and entries of |p^T p - I|.
double orthonormality_error(const FrameField& p);
/// Max over nodes of |det p - 1|.
double determinant_error(const FrameField& p);

/// Skew matrix with (1,2) = w3, (1,3) = -w2, (2,3) = w1.
Mat3 skew(const Vec3& w);
/// Inverse of skew() on the strictly upper triangle.
Vec3 unskew(const Mat3& a);

/// The tangent basis at one node:
///   V1 = (0, n3, -n2), V2 = (-n3, 0, n1), V3 = (n2, -n1, 0).
/// Linear in p, and p * skew(e_k) = -V_k.
std::array<Mat3, 3> tangent_vectors(const Mat3& p);

struct TangentBasis {
  std::array<MatrixField, 3> V;
};
TangentBasis tangent_basis(const FrameField& p);

/// Canonical skew basis Theta_1..Theta_3 of so(3) in the numbering
/// (1,2), (1,3), (2,3) of their +1 entry.
std::array<Mat3, 3> so3_basis();

/// Smooth random frame: Euler angles are sums of `terms` random cosines with
/// integer wave vectors |m_a| <= max_mode on each axis and normal(0, amplitude)
/// weights.
FrameField random_smooth_frame(const SpectralGrid& grid, std::mt19937_64& rng, double amplitude = 0.4,
                               int max_mode = 1, int terms = 4);

enum class Profile { RadialTwist, PlanarTilt, Manufactured };

/// Accepts "paper_eq_3_3", "paper_eq_3_4", "manufactured_t0" (and the enum
/// spellings "radial_twist", "planar_tilt", "manufactured").
Profile parse_profile(std::string_view name);
std::string_view profile_name(Profile p);

/// Closed-form initial frame fields. RadialTwist and PlanarTilt expect the
/// box [-1, 1]^3, Manufactured expects [0, 2 pi]^3; the grid is used as given.
FrameField initial_profile(Profile profile, const SpectralGrid& grid);
FrameField initial_profile(std::string_view name, const SpectralGrid& grid);

}  // namespace framewalk
