#pragma once

#include <functional>
#include <string>
#include <vector>

namespace framewalk {

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  /// Measured quantity and the bound it is compared against.
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Criterion ids to run (empty = all): 1..10, aniso.
  std::vector<std::string> only;
  unsigned long seed = 20240607;
  /// Desk-scale length of the anisotropic-coefficient run.
  double anisotropic_t_end = 1.0;
  /// Called as soon as each result is known.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  <id>  <name>  value=... threshold=...  (<detail>)".
std::string format_result(const CriterionResult& r);

}  // namespace framewalk
