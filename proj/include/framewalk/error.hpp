#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace framewalk {

/// Bad argument values: negative coefficients, non-finite angles, unknown names.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields that must share a grid do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Newton iteration exhausted its budget. Carries the iterate with the
/// smallest residual norm so the caller can retry from it.
class NonconvergenceError : public std::runtime_error {
 public:
  NonconvergenceError(const std::string& what, std::vector<double> best,
                      double best_norm, int residual_evals)
      : std::runtime_error(what),
        best_iterate(std::move(best)),
        best_residual_norm(best_norm),
        residual_evaluations(residual_evals) {}

  std::vector<double> best_iterate;
  double best_residual_norm;
  int residual_evaluations;
};

/// Configuration file problems; `line` is 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  int line;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::string path)
      : std::runtime_error(what + ": " + path), path(std::move(path)) {}
  std::string path;
};

}  // namespace framewalk
