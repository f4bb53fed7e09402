/**
 * @file coefficients.hpp
 * @brief Coefficient tables for Adams-Bashforth, Adams-Moulton and BDF methods.
 *
 * A k-step method advances a uniform-grid solution with
 *
 *   sum_{j=0..k} alpha_j y_{n+j} = h sum_{j=0..k} beta_j f_{n+j}.
 *
 * Methods are keyed by their ORDER p. Adams-Bashforth and BDF methods of order
 * p use k = p steps; Adams-Moulton methods of order p use k = p - 1 steps, so
 * "am2" is the trapezoidal rule.
 */
#pragma once

#include <string>
#include <vector>

namespace lmm {

enum class Family { AB, AM, BDF };

/// "ab" / "am" / "bdf".
std::string to_string(Family family);

struct LmmCoefficients {
  Family family = Family::AB;
  int k = 1;  ///< step count
  int p = 1;  ///< order
  std::vector<double> alpha;  ///< length k+1, alpha[k] > 0
  std::vector<double> beta;   ///< length k+1

  [[nodiscard]] bool is_explicit() const { return beta.at(k) == 0.0; }
  /// Lowercase family + order, e.g. "bdf5".
  [[nodiscard]] std::string name() const;
};

/**
 * @brief Coefficients of the order-p member of `family`.
 *
 * Supported: AB p = 2..6, AM p = 2..6, BDF p = 2..7 (BDF7 is zero-unstable and
 * exists only so stability checks have a negative case). Storage follows the
 * usual tables: alpha_k = 1 for Adams methods, beta_k = 1 for BDF.
 * Unsupported pairs throw std::invalid_argument.
 */
LmmCoefficients lmm_coefficients(Family family, int p);

/**
 * @brief Residuals of the linear order conditions up to index q.
 *
 * residual[0] = sum alpha_j and residual[i] = sum alpha_j j^i - i sum beta_j j^(i-1)
 * for i >= 1. An order-p method has residual[0..p] == 0 and residual[p+1] != 0.
 */
std::vector<double> order_conditions_residual(const LmmCoefficients& coeffs, int q);

}  // namespace lmm
