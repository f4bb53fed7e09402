#include "lmm/harness.hpp"

#include <cmath>

#include "lmm/rgre.hpp"
#include "lmm/runge_kutta.hpp"

namespace lmm {

Trajectory rk6_integrate(const Ivp& problem, long n_steps) {
  if (n_steps < 1) {
    throw std::invalid_argument("rk6_integrate: n_steps must be >= 1");
  }
  Trajectory traj;
  traj.t0 = problem.t0;
  traj.h = (problem.t_final - problem.t0) / static_cast<double>(n_steps);
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.push_back(problem.y0);
  CountedRhs rhs(problem);
  CompensatedState y{problem.y0, {}};
  for (long n = 0; n < n_steps; ++n) {
    y.add(rk_increment(butcher6(), rhs, traj.time(n), y.value, traj.h));
    traj.states.push_back(y.value);
  }
  traj.f_eval_count = rhs.count();
  return traj;
}

Trajectory reference_solution(const Ivp& problem, long n_steps) {
  Trajectory ref = rk6_integrate(problem, n_steps);
  if (!problem.has_exact()) return ref;

  double worst = 0.0;
  for (long n = 0; n <= n_steps; ++n) {
    const Vector exact = problem.exact(ref.time(n));
    const Vector& approx = ref.states[static_cast<std::size_t>(n)];
    const double scale = std::max(1.0, exact.lpNorm<Eigen::Infinity>());
    worst = std::max(worst, (approx - exact).lpNorm<Eigen::Infinity>() / scale);
    ref.states[static_cast<std::size_t>(n)] = exact;
  }
  if (worst >= 1e-12) {
    throw NumericalError("reference for '" + problem.name +
                         "' disagrees with its exact solution (" + std::to_string(worst) + ")");
  }
  return ref;
}

double max_norm_error(const Trajectory& traj, const Trajectory& ref) {
  const long n = traj.steps();
  const long n_ref = ref.steps();
  if (n < 1 || n_ref < n || n_ref % n != 0) {
    throw std::invalid_argument("max_norm_error: grids do not nest (" + std::to_string(n) +
                                " vs " + std::to_string(n_ref) + " steps)");
  }
  const long stride = n_ref / n;
  double worst = 0.0;
  for (long i = 0; i <= n; ++i) {
    const Vector diff = traj.states[static_cast<std::size_t>(i)] -
                        ref.states[static_cast<std::size_t>(i * stride)];
    worst = std::max(worst, diff.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

double estimated_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
    throw NumericalError("estimated_order: errors must be positive (round-off floor reached?)");
  }
  return std::log2(e_coarse / e_fine);
}

std::vector<long> doubling_grids(long n0, long n_last) {
  std::vector<long> out;
  for (long n = n0; n <= n_last; n *= 2) out.push_back(n);
  return out;
}

double final_time_error(const Trajectory& traj, const Trajectory& ref) {
  const long n = traj.steps();
  const long n_ref = ref.steps();
  if (n < 1 || n_ref < n || n_ref % n != 0) {
    throw std::invalid_argument("final_time_error: grids do not nest (" + std::to_string(n) +
                                " vs " + std::to_string(n_ref) + " steps)");
  }
  return (traj.states.back() - ref.states.back()).lpNorm<Eigen::Infinity>();
}

ErrorMeasure error_measure_from_name(const std::string& name) {
  if (name == "all") return ErrorMeasure::AllPoints;
  if (name == "final") return ErrorMeasure::FinalTime;
  throw std::invalid_argument("unknown error measure '" + name + "' (valid: all, final)");
}

ConvergenceReport convergence_study(const MethodSpec& method, int ell, const Ivp& problem,
                                    std::span<const long> n_list, const NewtonConfig& newton,
                                    const Trajectory* reference, ErrorMeasure measure) {
  if (n_list.empty()) {
    throw std::invalid_argument("convergence_study: empty grid list");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] != 2 * n_list[i - 1]) {
      throw std::invalid_argument("convergence_study: grid counts must double");
    }
  }
  if (ell < 0) {
    throw std::invalid_argument("convergence_study: ell must be >= 0");
  }

  Trajectory computed_ref;
  if (reference == nullptr) {
    computed_ref = reference_solution(problem);
    reference = &computed_ref;
  }

  const auto error = [&](const Trajectory& traj) {
    return measure == ErrorMeasure::FinalTime ? final_time_error(traj, *reference)
                                              : max_norm_error(traj, *reference);
  };
  ConvergenceReport report{method.name(), ell, problem.name, {}};
  for (const long n : n_list) {
    ConvergenceRow row;
    row.n_coarse = n;
    try {
      if (ell == 0) {
        const Trajectory traj = integrate(method, problem, n, newton);
        row.max_error = error(traj);
        row.f_evals = traj.f_eval_count;
      } else {
        const RgreResult r = run_rgre(method, problem, n, ell, newton);
        row.max_error = error(r.combined);
        row.f_evals = r.total_f_evals;
      }
    } catch (const NewtonFailure& failure) {
      throw NumericalError(std::string(failure.what()) + " [n=" + std::to_string(n) + "]");
    }
    if (!report.rows.empty() && report.rows.back().max_error > 0.0 && row.max_error > 0.0) {
      row.estimated_order = estimated_order(report.rows.back().max_error, row.max_error);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::optional<double> fitted_slope(const ConvergenceReport& report, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& row : report.rows) {
    if (!(row.max_error > floor)) continue;
    const double x = std::log2(static_cast<double>(row.n_coarse));
    const double y = -std::log2(row.max_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return std::nullopt;
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace lmm
