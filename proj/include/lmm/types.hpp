/**
 * @file types.hpp
 * @brief Shared vector/matrix aliases and the library's exception types.
 */
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace lmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for failures of a numerical procedure (as opposed to bad input,
/// which is reported with std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief Newton iteration for an implicit step did not reach its tolerance. */
class NewtonFailure : public NumericalError {
 public:
  NewtonFailure(const std::string& what, double last_residual)
      : NumericalError(what), last_residual_(last_residual) {}

  [[nodiscard]] double last_residual() const { return last_residual_; }
  [[nodiscard]] std::optional<long> step_index() const { return step_index_; }
  [[nodiscard]] std::optional<int> grid_index() const { return grid_index_; }

  /// Copy of this failure with the step index of the enclosing run attached.
  [[nodiscard]] NewtonFailure at_step(long step) const;
  /// Copy of this failure tagged with the RGRE component grid j.
  [[nodiscard]] NewtonFailure on_grid(int j) const;

 private:
  double last_residual_;
  std::optional<long> step_index_;
  std::optional<int> grid_index_;
};

}  // namespace lmm
