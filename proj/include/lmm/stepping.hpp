/**
 * @file stepping.hpp
 * @brief Single steps of a linear multistep method: explicit, implicit (Newton) and PECE.
 *
 * Histories are passed oldest first: history_y[j] = y_{n+j}, history_f[j] = f_{n+j}
 * for j = 0..k-1, and t_n is the time of history_y[0].
 */
#pragma once

#include <span>

#include "lmm/coefficients.hpp"
#include "lmm/ivp.hpp"

namespace lmm {

enum class JacobianMode { Analytic, FiniteDifference };

/** @brief Newton iteration settings for implicit steps. */
struct NewtonConfig {
  double tol = 1e-12;  ///< max-norm of the residual
  int max_iters = 25;
  /// Analytic falls back to finite differences when the problem has no Jacobian.
  JacobianMode jacobian_mode = JacobianMode::Analytic;

  /// Throws std::invalid_argument unless tol > 0 and max_iters >= 1.
  void validate() const;
};

/**
 * @brief Right-hand side wrapper that tallies every evaluation of f.
 *
 * Finite-difference Jacobians count their f evaluations too. One instance
 * per integration run; not shared between threads.
 */
class CountedRhs {
 public:
  explicit CountedRhs(const Ivp& problem) : problem_(&problem) {}

  Vector operator()(double t, const Vector& y) {
    ++count_;
    return problem_->rhs(t, y);
  }
  Matrix jacobian(double t, const Vector& y, JacobianMode mode);

  [[nodiscard]] const Ivp& problem() const { return *problem_; }
  [[nodiscard]] long count() const { return count_; }

 private:
  const Ivp* problem_;
  long count_ = 0;
};

/// y_{n+k} - y_{n+k-1} for an explicit method, formed from the differences
/// y_{n+j} - y_{n+k-1} so that a constant history gives exactly zero.
Vector explicit_increment(const LmmCoefficients& coeffs, std::span<const Vector> history_y,
                          std::span<const Vector> history_f, double h);

/// y_{n+k} = (h sum_{j<k} beta_j f_{n+j} - sum_{j<k} alpha_j y_{n+j}) / alpha_k.
/// Requires an explicit method (beta_k == 0).
Vector step_explicit(const LmmCoefficients& coeffs, double t_n,
                     std::span<const Vector> history_y, std::span<const Vector> history_f,
                     double h);

/** @brief Solution of an implicit step together with f at that solution. */
struct ImplicitStep {
  Vector y;
  Vector delta;  ///< y_{n+k} - y_{n+k-1}; y is their rounded sum
  Vector f;
  int iterations = 0;
};

/**
 * @brief Solves alpha_k y - h beta_k f(t_{n+k}, y) = known-part for y with Newton.
 *
 * The iteration is seeded with the k-step Adams-Bashforth extrapolation of the
 * history when an AB table of that order exists, else with y_{n+k-1}. Throws
 * NewtonFailure when the max-norm residual stays above newton.tol after
 * newton.max_iters iterations or when the Newton matrix is singular.
 */
ImplicitStep solve_implicit(const LmmCoefficients& coeffs, double t_n,
                            std::span<const Vector> history_y,
                            std::span<const Vector> history_f, double h, CountedRhs& rhs,
                            const NewtonConfig& newton);

/// Convenience form of solve_implicit returning only y_{n+k}.
Vector step_implicit(const LmmCoefficients& coeffs, double t_n,
                     std::span<const Vector> history_y, std::span<const Vector> history_f,
                     double h, const Ivp& problem, const NewtonConfig& newton = {});

/**
 * @brief One predict-evaluate-correct step.
 *
 * The history holds max(predictor.k, corrector.k) entries; each formula reads
 * the most recent entries it needs. The corrector is applied once with the
 * predicted f in place of its implicit term. The final evaluation of f at the
 * corrected value is left to the caller (it becomes the next history entry).
 */
Vector step_pece(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                 double t_n, std::span<const Vector> history_y,
                 std::span<const Vector> history_f, double h, CountedRhs& rhs);

/// y_{n+k} - y_{n+k-1} of one PECE step.
Vector pece_increment(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                      double t_n, std::span<const Vector> history_y,
                      std::span<const Vector> history_f, double h, CountedRhs& rhs);

/// Convenience form of step_pece for a bare problem.
Vector step_pece(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                 double t_n, std::span<const Vector> history_y,
                 std::span<const Vector> history_f, double h, const Ivp& problem);

}  // namespace lmm
