#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "framewalk/field.hpp"
#include "framewalk/integrator.hpp"

namespace framewalk {

inline constexpr const char* kHistoryHeader =
    "step,t,tau,F,F1,F2,F3,orth_error,residual_evals,newton_iters,dissipation";

/// Reals are written with 17 significant digits, so reading back is exact.
std::string history_csv(const std::vector<HistoryRecord>& history);
std::vector<HistoryRecord> parse_history_csv(const std::string& text);
void write_history_csv(const std::string& path, const std::vector<HistoryRecord>& history);
std::vector<HistoryRecord> read_history_csv(const std::string& path);

/// Legacy ASCII STRUCTURED_POINTS file with VECTORS n1, n2, n3; x1 varies
/// fastest as the format requires.
void write_vtk(const std::string& path, const FrameField& p, const std::string& title = "framewalk frame");

struct VtkFrame {
  std::array<int, 3> dims{};
  std::array<double, 3> origin{};
  std::array<double, 3> spacing{};
  /// Point vectors in file order (x1 fastest).
  std::array<std::vector<Vec3>, 3> n;
};
VtkFrame read_vtk(const std::string& path);

/// Self-contained SVG line chart of F against t. With `log_scale` the y
/// axis is logarithmic over the positive values; if there are none the
/// chart falls back to linear.
std::string energy_svg(const std::vector<std::pair<double, double>>& points, bool log_scale);
void write_energy_svg(const std::string& path, const std::vector<std::pair<double, double>>& points,
                      bool log_scale);

/// "frame_<step>.vtk" with the step zero-padded to six digits.
std::string snapshot_name(int step);

}  // namespace framewalk
