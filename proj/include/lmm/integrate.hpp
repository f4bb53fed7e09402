/**
 * @file integrate.hpp
 * @brief Fixed-step integration of an Ivp with a linear multistep method.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lmm/coefficients.hpp"
#include "lmm/ivp.hpp"
#include "lmm/stepping.hpp"

namespace lmm {

/** @brief States on the uniform grid t0 + n*h, n = 0..states.size()-1. */
struct Trajectory {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<Vector> states;
  long f_eval_count = 0;

  [[nodiscard]] long steps() const { return static_cast<long>(states.size()) - 1; }
  [[nodiscard]] double time(long n) const { return t0 + static_cast<double>(n) * h; }
};

enum class StepMode { Explicit, Implicit, PredictorCorrector };

/**
 * @brief A base method plus how its steps are taken.
 *
 * AB methods step explicitly, BDF methods with Newton, and AM methods in PECE
 * mode with the Adams-Bashforth method of the same order as predictor.
 */
struct MethodSpec {
  LmmCoefficients coeffs;
  StepMode mode = StepMode::Explicit;
  std::optional<LmmCoefficients> predictor;

  /// Number of back values a step reads (and the starter must supply).
  [[nodiscard]] int history_size() const;
  [[nodiscard]] std::string name() const { return coeffs.name(); }
};

/// Default stepping for the order-p member of `family`.
MethodSpec make_method(Family family, int p);

/// Parses "ab2", "am3", "bdf5", ... Unknown strings throw std::invalid_argument
/// naming the accepted forms.
MethodSpec method_from_name(const std::string& name);

/// Every name accepted by method_from_name, in family/order order.
std::vector<std::string> method_names();

/**
 * @brief Starting values y_0..y_{k-1} by Ralston RK2 (p = 2) or RK3 (p = 3).
 *
 * Entry 0 is y0 exactly; entry i comes from i RK steps of size h.
 * Throws std::invalid_argument for other p, k < 1 or h <= 0.
 */
std::vector<Vector> ralston_start(const Ivp& problem, double h, int k, int p);

/// Starting values plus f at every returned state except the last (those
/// are the first stages of the RK steps and are reused by the LMM).
struct StartValues {
  std::vector<Vector> states;
  std::vector<Vector> derivatives;
};

/// Starter used by integrate: Ralston RK2/RK3 for order <= 3, Butcher's
/// sixth-order RK for order >= 4.
StartValues start_values(CountedRhs& rhs, double h, int count, int order);

/**
 * @brief Integrates `problem` over [t0, t_final] with n_steps uniform steps.
 *
 * h = (t_final - t0) / n_steps. The first history_size() states come from the
 * starter on this grid, the rest from repeated LMM steps. f_eval_count
 * includes the starter; f is not evaluated at the final state.
 * Requires n_steps >= history_size(). Newton failures are rethrown with the
 * step index attached.
 */
Trajectory integrate(const MethodSpec& method, const Ivp& problem, long n_steps,
                     const NewtonConfig& newton = {});

}  // namespace lmm
