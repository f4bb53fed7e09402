#include "lmm/stepping.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lmm {

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("newton tol must be > 0");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("newton max_iters must be >= 1");
  }
}

Matrix CountedRhs::jacobian(double t, const Vector& y, JacobianMode mode) {
  if (mode == JacobianMode::Analytic && problem_->has_jacobian()) {
    return problem_->jacobian(t, y);
  }
  count_ += 2 * y.size();
  return finite_difference_jacobian(*problem_, t, y);
}

namespace {

void check_history(const LmmCoefficients& coeffs, std::span<const Vector> history_y,
                   std::span<const Vector> history_f) {
  const auto k = static_cast<std::size_t>(coeffs.k);
  if (history_y.size() < k || history_f.size() < k) {
    throw std::invalid_argument(coeffs.name() + ": history shorter than step count");
  }
}

// Right side of
//   alpha_k (y_{n+k} - y_{n+k-1}) - h beta_k f_{n+k}
//     = h sum_{j<k} beta_j f_{n+j} - sum_{j<k-1} alpha_j (y_{n+j} - y_{n+k-1}),
// which follows from sum_j alpha_j = 0. Constant histories give exactly zero.
Vector known_increment(const LmmCoefficients& coeffs, std::span<const Vector> history_y,
                       std::span<const Vector> history_f, double h) {
  const std::size_t offset_y = history_y.size() - static_cast<std::size_t>(coeffs.k);
  const std::size_t offset_f = history_f.size() - static_cast<std::size_t>(coeffs.k);
  const Vector& base = history_y.back();
  Vector acc = Vector::Zero(base.size());
  for (int j = 0; j < coeffs.k; ++j) {
    if (coeffs.beta[j] != 0.0) {
      acc += (h * coeffs.beta[j]) * history_f[offset_f + j];
    }
    if (coeffs.alpha[j] != 0.0 && j + 1 < coeffs.k) {
      acc -= coeffs.alpha[j] * (history_y[offset_y + j] - base);
    }
  }
  return acc;
}

// Increment of the k-step Adams-Bashforth extrapolation (Euler for k = 1).
Vector newton_seed(const LmmCoefficients& coeffs, std::span<const Vector> history_y,
                   std::span<const Vector> history_f, double h) {
  if (coeffs.k == 1) {
    return h * history_f.back();
  }
  if (coeffs.k <= 6) {
    return explicit_increment(lmm_coefficients(Family::AB, coeffs.k), history_y, history_f, h);
  }
  return Vector::Zero(history_y.back().size());
}

}  // namespace

Vector explicit_increment(const LmmCoefficients& coeffs, std::span<const Vector> history_y,
                          std::span<const Vector> history_f, double h) {
  if (!coeffs.is_explicit()) {
    throw std::invalid_argument(coeffs.name() + " is implicit; step_explicit needs beta_k == 0");
  }
  check_history(coeffs, history_y, history_f);
  return known_increment(coeffs, history_y, history_f, h) / coeffs.alpha[coeffs.k];
}

Vector step_explicit(const LmmCoefficients& coeffs, double /*t_n*/,
                     std::span<const Vector> history_y, std::span<const Vector> history_f,
                     double h) {
  const Vector inc = explicit_increment(coeffs, history_y, history_f, h);
  return history_y.back() + inc;
}

ImplicitStep solve_implicit(const LmmCoefficients& coeffs, double t_n,
                            std::span<const Vector> history_y,
                            std::span<const Vector> history_f, double h, CountedRhs& rhs,
                            const NewtonConfig& newton) {
  newton.validate();
  check_history(coeffs, history_y, history_f);
  const int k = coeffs.k;
  const double alpha_k = coeffs.alpha[k];
  const double h_beta_k = h * coeffs.beta[k];
  const double t_new = t_n + static_cast<double>(history_y.size()) * h;
  const Vector& base = history_y.back();
  const Vector known = known_increment(coeffs, history_y, history_f, h);

  // Newton on the increment delta = y_{n+k} - y_{n+k-1}.
  ImplicitStep step;
  step.delta = newton_seed(coeffs, history_y, history_f, h);
  double residual_norm = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter <= newton.max_iters; ++iter) {
    step.y = base + step.delta;
    step.f = rhs(t_new, step.y);
    const Vector residual = alpha_k * step.delta - h_beta_k * step.f - known;
    residual_norm = residual.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual_norm)) {
      break;
    }
    // At least one correction, so an accurate seed is not accepted unrefined.
    if (residual_norm <= newton.tol && iter > 0) {
      step.iterations = iter;
      return step;
    }
    if (iter == newton.max_iters) {
      break;
    }
    const auto m = step.y.size();
    const Matrix newton_matrix = alpha_k * Matrix::Identity(m, m) -
                                 h_beta_k * rhs.jacobian(t_new, step.y, newton.jacobian_mode);
    const Eigen::FullPivLU<Matrix> lu(newton_matrix);
    if (!lu.isInvertible()) {
      std::ostringstream msg;
      msg << coeffs.name() << ": singular Newton matrix at t=" << t_new;
      throw NewtonFailure(msg.str(), residual_norm);
    }
    step.delta -= lu.solve(residual);
  }
  std::ostringstream msg;
  msg << coeffs.name() << ": Newton did not converge at t=" << t_new << " (residual "
      << residual_norm << ", tol " << newton.tol << ")";
  throw NewtonFailure(msg.str(), residual_norm);
}

Vector step_implicit(const LmmCoefficients& coeffs, double t_n,
                     std::span<const Vector> history_y, std::span<const Vector> history_f,
                     double h, const Ivp& problem, const NewtonConfig& newton) {
  CountedRhs rhs(problem);
  return solve_implicit(coeffs, t_n, history_y, history_f, h, rhs, newton).y;
}

Vector pece_increment(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                      double t_n, std::span<const Vector> history_y,
                      std::span<const Vector> history_f, double h, CountedRhs& rhs) {
  if (!predictor.is_explicit()) {
    throw std::invalid_argument("PECE predictor " + predictor.name() + " must be explicit");
  }
  check_history(corrector, history_y, history_f);
  const auto len = static_cast<int>(history_y.size());
  const Vector predicted =
      history_y.back() + explicit_increment(predictor, history_y, history_f, h);
  const Vector f_predicted = rhs(t_n + len * h, predicted);
  const int k = corrector.k;
  Vector acc = known_increment(corrector, history_y, history_f, h);
  acc += (h * corrector.beta[k]) * f_predicted;
  return acc / corrector.alpha[k];
}

Vector step_pece(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                 double t_n, std::span<const Vector> history_y,
                 std::span<const Vector> history_f, double h, CountedRhs& rhs) {
  const Vector inc = pece_increment(predictor, corrector, t_n, history_y, history_f, h, rhs);
  return history_y.back() + inc;
}

Vector step_pece(const LmmCoefficients& predictor, const LmmCoefficients& corrector,
                 double t_n, std::span<const Vector> history_y,
                 std::span<const Vector> history_f, double h, const Ivp& problem) {
  CountedRhs rhs(problem);
  return step_pece(predictor, corrector, t_n, history_y, history_f, h, rhs);
}

}  // namespace lmm
