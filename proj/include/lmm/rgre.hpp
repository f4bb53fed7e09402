/**
 * @file rgre.hpp
 * @brief Repeated global Richardson extrapolation over dyadically nested grids.
 *
 * A base method of order p is run independently on grids with steps
 * h, h/2, ..., h/2^ell. The accelerated value on the coarse grid is
 *
 *   r_n = sum_{j=0..ell} gamma_j * y^{(j)}_{2^j n},
 *
 * where gamma solves  sum gamma_j = 1  and  sum gamma_j 2^{-j(p+q)} = 0  for
 * q = 0..ell-1, which cancels the h^p..h^{p+ell-1} terms of the global error
 * expansion and leaves order p + ell.
 */
#pragma once

#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lmm/integrate.hpp"

namespace lmm {

using Rational = boost::multiprecision::cpp_rational;

/** @brief Exact combination weights for base order p and ell extrapolations. */
struct ExtrapolationScheme {
  int p = 1;
  int ell = 1;
  std::vector<Rational> gamma;  ///< gamma[j] multiplies the grid with step h/2^j

  /// gamma rounded to double.
  [[nodiscard]] std::vector<double> weights() const;
};

/**
 * @brief Solves the (ell+1)x(ell+1) moment system in exact rational arithmetic.
 *
 * Requires p >= 1 and 1 <= ell <= 8; otherwise std::invalid_argument.
 */
ExtrapolationScheme gamma_coefficients(int p, int ell);

/// gamma over its least common denominator, coarse to fine:
/// (p=2, ell=2) -> "1/21,-12/21,32/21".
std::string format_gamma(const ExtrapolationScheme& scheme);

/**
 * @brief Pointwise combination r_n = sum_j gamma_j y^{(j)}_{2^j n} on the coarse grid.
 *
 * Terms are accumulated in ascending j with compensated summation, so the
 * result does not depend on how the components were produced. Throws
 * std::invalid_argument when there are not ell+1 components, the grids do not
 * nest by factors of two, or the start times differ.
 */
Trajectory combine(std::span<const Trajectory> components, const ExtrapolationScheme& scheme);

struct RgreResult {
  double coarse_h = 0.0;
  Trajectory combined;
  std::vector<Trajectory> components;  ///< component j has 2^j * n_coarse steps
  long total_f_evals = 0;
};

/**
 * @brief Runs the base method on n_coarse * 2^j steps for j = 0..ell and combines.
 *
 * With `parallel` the components run as concurrent tasks; the combined output
 * is bit-identical either way. A NewtonFailure from component j is rethrown
 * tagged with j.
 */
RgreResult run_rgre(const MethodSpec& method, const Ivp& problem, long n_coarse, int ell,
                    const NewtonConfig& newton = {}, bool parallel = true);

/// total_f_evals / components[0].f_eval_count; approximately 2^{ell+1} - 1.
double work_ratio(const RgreResult& result);

}  // namespace lmm
