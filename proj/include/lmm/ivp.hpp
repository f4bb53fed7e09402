/**
 * @file ivp.hpp
 * @brief Initial-value problems y' = f(t, y), y(t0) = y0 and the benchmark registry.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lmm/types.hpp"

namespace lmm {

using RhsFn = std::function<Vector(double, const Vector&)>;
using JacobianFn = std::function<Matrix(double, const Vector&)>;
using ExactFn = std::function<Vector(double)>;

/**
 * @brief An initial-value problem on [t0, t_final].
 *
 * Immutable once built. rhs, jacobian and exact must be pure so the same
 * problem can be integrated from several threads at once. jacobian and exact
 * are optional (empty std::function).
 */
struct Ivp {
  std::string name;
  int dimension = 0;
  double t0 = 0.0;
  double t_final = 0.0;
  Vector y0;
  RhsFn rhs;
  JacobianFn jacobian;
  ExactFn exact;

  [[nodiscard]] bool has_jacobian() const { return static_cast<bool>(jacobian); }
  [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact); }
};

/// Builds a problem and checks its invariants: t_final > t0, y0 has
/// `dimension` entries, rhs(t0, y0) has `dimension` entries and exact(t0)
/// reproduces y0. Throws std::invalid_argument on violation.
Ivp make_ivp(std::string name, double t0, double t_final, Vector y0, RhsFn rhs,
             JacobianFn jacobian = {}, ExactFn exact = {});

/// y' = lambda*y, y(0) = 1 on [0, 1].
Ivp make_dahlquist(double lambda = -5.0);

/// y1' = 0.1 y1 - 0.3 y1 y2, y2' = 0.5 (y1 - 1) y2 on [0, 62], y(0) = (1, 1).
Ivp make_lotka_volterra();

/// y1' = y2, y2' = 2 (1 - y1^2) y2 - y1 on [0, 20], y(0) = (2, 0).
Ivp make_van_der_pol();

/// Registered benchmark names: "dahlquist", "lotka-volterra", "van-der-pol".
const std::vector<std::string>& problem_names();

/// Looks a benchmark up by registered name; unknown names throw
/// std::invalid_argument listing the valid ones.
Ivp find_problem(const std::string& name);

/// Central finite-difference Jacobian of rhs with step sqrt(eps)*(1+|y_i|).
Matrix finite_difference_jacobian(const Ivp& problem, double t, const Vector& y);

}  // namespace lmm
