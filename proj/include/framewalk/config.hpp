#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "framewalk/discrete_gradient.hpp"
#include "framewalk/elasticity.hpp"
#include "framewalk/frame.hpp"
#include "framewalk/integrator.hpp"
#include "framewalk/jfnk.hpp"
#include "framewalk/verification.hpp"

namespace framewalk {

/// Fully resolved run description.
///
/// File format: one `key = value` per line, `#` starts a comment, lists are
/// comma separated. Required keys: grid, K, t_end and either profile or all
/// three of euler_theta, euler_phi, euler_psi. Everything else has the
/// default shown by `serialize_config(SimConfig{})`.
struct SimConfig {
  std::array<int, 3> grid{32, 32, 1};
  /// Box geometry. Unset means the box of the chosen profile:
  /// [-1, 1]^3 for paper_eq_3_3 / paper_eq_3_4, [0, 2 pi]^3 otherwise.
  std::optional<std::array<double, 3>> extents;
  std::optional<std::array<double, 3>> origin;
  bool dealias = false;

  ElasticCoefficients coeffs;

  /// Either a named profile or three Euler-angle expressions in x1, x2, x3.
  std::string profile = "paper_eq_3_3";
  std::array<std::string, 3> euler;
  bool use_euler = false;

  double t_end = 1.0;
  AdaptiveSettings step;
  int max_steps = 0;
  SolverSettings solver;
  GradientKind gradient = GradientKind::Biaxial;

  std::string output_dir = "framewalk_out";
  /// Write frame_<step>.vtk every this many steps (0 = first and last only).
  int snapshot_every = 0;
  bool energy_log_scale = false;

  /// Convergence study. Temporal: grid size sweep_n and steps sweep_taus.
  /// Spatial: sizes sweep_ns at step sweep_tau. Errors are taken at t_end.
  int sweep_n = 24;
  std::vector<double> sweep_taus{0.1, 0.05, 0.025, 0.0125, 0.00625};
  std::vector<int> sweep_ns{6, 10, 14, 18, 22};
  double sweep_tau = 1e-3;

  GridSpec grid_spec() const;
  SweepSettings sweep_settings(SweepMode mode) const;
};

SimConfig parse_config_text(const std::string& text);
/// Throws IoError if the file cannot be read and ConfigError on content.
SimConfig parse_config(const std::string& path);
std::string serialize_config(const SimConfig& c);

/// Initial frame described by `c` on its grid.
FrameField initial_frame(const SimConfig& c);

/// Evaluates a scalar expression in x1, x2, x3 (aliases x, y, z) with
/// + - * / ^, parentheses, pi, e and sin cos tan exp log sqrt abs.
/// Throws InvalidInput on syntax errors.
double evaluate_expression(const std::string& expr, double x1, double x2, double x3);

}  // namespace framewalk
