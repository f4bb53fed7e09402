/**
 * @file runge_kutta.hpp
 * @brief Explicit Runge-Kutta tableaus used for starting values and reference runs.
 */
#pragma once

#include <vector>

#include "lmm/types.hpp"

namespace lmm {

class CountedRhs;

/** @brief Butcher tableau of an explicit RK method (strictly lower-triangular a). */
struct ButcherTableau {
  int order = 0;
  std::vector<double> c;
  std::vector<std::vector<double>> a;  ///< row i holds a[i][0..i-1]
  std::vector<double> b;

  [[nodiscard]] int stages() const { return static_cast<int>(b.size()); }
};

/// Ralston's second-order method: c = (0, 2/3), b = (1/4, 3/4).
const ButcherTableau& ralston2();
/// Ralston's third-order method: c = (0, 1/2, 3/4), b = (2/9, 1/3, 4/9).
const ButcherTableau& ralston3();
/// Butcher's 7-stage sixth-order method.
const ButcherTableau& butcher6();

/// h * sum_i b_i k_i for one RK step from (t, y).
Vector rk_increment(const ButcherTableau& tableau, CountedRhs& rhs, double t, const Vector& y,
                    double h, const Vector* f0 = nullptr);

/// One RK step from (t, y). `f0`, when given, is f(t, y) and saves the first
/// stage evaluation.
Vector rk_step(const ButcherTableau& tableau, CountedRhs& rhs, double t, const Vector& y,
               double h, const Vector* f0 = nullptr);

/// Running state updated by Kahan-compensated increments.
struct CompensatedState {
  Vector value;
  Vector carry;

  void add(const Vector& increment);
};

}  // namespace lmm
