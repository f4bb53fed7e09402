/**
 * @file harness.hpp
 * @brief Reference solutions, max-norm errors and convergence-order studies.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmm/integrate.hpp"

namespace lmm {

/// Number of uniform steps of the reference grid.
inline constexpr long kReferenceSteps = 1L << 16;

/// Fixed-step run of Butcher's sixth-order RK method (no multistep history).
Trajectory rk6_integrate(const Ivp& problem, long n_steps);

/**
 * @brief Reference trajectory on `n_steps` (default 2^16) uniform steps.
 *
 * Computed with rk6_integrate. When the problem has an exact solution the RK6
 * run is checked against it (max error below 1e-12 relative to the solution
 * size, else NumericalError) and the exact values are returned instead.
 */
Trajectory reference_solution(const Ivp& problem, long n_steps = kReferenceSteps);

/// Max over the shared grid points of |traj - ref|_inf. The reference step
/// count must be a positive multiple of traj's; std::invalid_argument otherwise.
double max_norm_error(const Trajectory& traj, const Trajectory& ref);

/// |traj - ref|_inf at the last grid point (t_final). Same nesting rule.
double final_time_error(const Trajectory& traj, const Trajectory& ref);

/// Which error a convergence study records.
enum class ErrorMeasure {
  AllPoints,  ///< max_norm_error
  FinalTime,  ///< final_time_error
};

/// "all" | "final"; std::invalid_argument otherwise.
ErrorMeasure error_measure_from_name(const std::string& name);

/// log2(e_coarse / e_fine); both errors must be > 0 (NumericalError otherwise,
/// which usually means the round-off floor was reached).
double estimated_order(double e_coarse, double e_fine);

struct ConvergenceRow {
  long n_coarse = 0;
  double max_error = 0.0;
  std::optional<double> estimated_order;  ///< absent on the first row
  long f_evals = 0;
};

struct ConvergenceReport {
  std::string method;
  int ell = 0;
  std::string problem;
  std::vector<ConvergenceRow> rows;
};

/**
 * @brief Error and order table of `method` with ell extrapolations (0 = base
 * method alone) on the grids n_list.
 *
 * n_list must double strictly from entry to entry and every grid must nest in
 * the reference. `reference`, when given, replaces reference_solution(problem).
 * Orders come from consecutive pairs; a pair with a zero error gets no order.
 */
ConvergenceReport convergence_study(const MethodSpec& method, int ell, const Ivp& problem,
                                    std::span<const long> n_list,
                                    const NewtonConfig& newton = {},
                                    const Trajectory* reference = nullptr,
                                    ErrorMeasure measure = ErrorMeasure::AllPoints);

/// n0, 2 n0, ..., n_last.
std::vector<long> doubling_grids(long n0, long n_last);

/// Least-squares slope of -log2(error) against log2(n) over rows with error > floor.
std::optional<double> fitted_slope(const ConvergenceReport& report, double floor = 1e-11);

}  // namespace lmm
