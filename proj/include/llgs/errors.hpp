#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace llgs {

// Invalid or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Implicit solve did not reach the requested residual tolerance.
struct SolverError : std::runtime_error {
  SolverError(const std::string& msg, int iterations_, std::vector<double> residual_history_)
      : std::runtime_error(msg),
        iterations(iterations_),
        residual_history(std::move(residual_history_)) {}
  int iterations = 0;
  std::size_t step_index = 0;  // filled in by the trajectory driver
  std::vector<double> residual_history;
};

// Spherical right-hand side evaluated too close to a pole.
struct SingularityError : std::runtime_error {
  SingularityError(const std::string& msg, double theta_) : std::runtime_error(msg), theta(theta_) {}
  double theta = 0.0;
  std::size_t step_index = 0;
};

}  // namespace llgs
