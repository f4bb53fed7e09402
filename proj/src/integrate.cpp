#include "lmm/integrate.hpp"

#include <algorithm>
#include <cctype>

#include "lmm/runge_kutta.hpp"

namespace lmm {

int MethodSpec::history_size() const {
  return predictor ? std::max(coeffs.k, predictor->k) : coeffs.k;
}

MethodSpec make_method(Family family, int p) {
  MethodSpec m{lmm_coefficients(family, p), StepMode::Explicit, std::nullopt};
  switch (family) {
    case Family::AB:
      m.mode = StepMode::Explicit;
      break;
    case Family::AM:
      m.mode = StepMode::PredictorCorrector;
      m.predictor = lmm_coefficients(Family::AB, p);
      break;
    case Family::BDF:
      m.mode = StepMode::Implicit;
      break;
  }
  return m;
}

std::vector<std::string> method_names() {
  std::vector<std::string> names;
  for (int p = 2; p <= 6; ++p) names.push_back("ab" + std::to_string(p));
  for (int p = 2; p <= 6; ++p) names.push_back("am" + std::to_string(p));
  for (int p = 2; p <= 7; ++p) names.push_back("bdf" + std::to_string(p));
  return names;
}

MethodSpec method_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto names = method_names();
  if (std::find(names.begin(), names.end(), lower) == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += valid.empty() ? n : ", " + n;
    throw std::invalid_argument("unknown method '" + name + "' (valid: " + valid + ")");
  }
  const Family family = lower.rfind("bdf", 0) == 0  ? Family::BDF
                        : lower.rfind("am", 0) == 0 ? Family::AM
                                                    : Family::AB;
  return make_method(family, lower.back() - '0');
}

StartValues start_values(CountedRhs& rhs, double h, int count, int order) {
  if (count < 1) {
    throw std::invalid_argument("starter needs k >= 1");
  }
  if (!(h > 0.0)) {
    throw std::invalid_argument("starter needs h > 0");
  }
  const ButcherTableau& tableau = order <= 2 ? ralston2() : order == 3 ? ralston3() : butcher6();
  const Ivp& problem = rhs.problem();
  StartValues out;
  out.states.push_back(problem.y0);
  for (int i = 1; i < count; ++i) {
    const double t = problem.t0 + (i - 1) * h;
    out.derivatives.push_back(rhs(t, out.states.back()));
    out.states.push_back(rk_step(tableau, rhs, t, out.states.back(), h, &out.derivatives.back()));
  }
  return out;
}

std::vector<Vector> ralston_start(const Ivp& problem, double h, int k, int p) {
  if (p != 2 && p != 3) {
    throw std::invalid_argument("Ralston starter order must be 2 or 3, got " + std::to_string(p));
  }
  CountedRhs rhs(problem);
  return start_values(rhs, h, k, p).states;
}

Trajectory integrate(const MethodSpec& method, const Ivp& problem, long n_steps,
                     const NewtonConfig& newton) {
  const int k = method.history_size();
  if (n_steps < k) {
    throw std::invalid_argument(method.name() + ": n_steps must be >= " + std::to_string(k));
  }
  newton.validate();

  Trajectory traj;
  traj.t0 = problem.t0;
  traj.h = (problem.t_final - problem.t0) / static_cast<double>(n_steps);
  const double h = traj.h;

  CountedRhs rhs(problem);
  StartValues start = start_values(rhs, h, k, method.coeffs.p);
  traj.states = std::move(start.states);
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  std::vector<Vector> history_f = std::move(start.derivatives);
  history_f.push_back(rhs(traj.time(k - 1), traj.states.back()));

  // Sliding windows over the last k states and derivatives.
  std::vector<Vector> ys(traj.states.begin(), traj.states.end());
  std::vector<Vector> fs = std::move(history_f);

  // States accumulate y_{n+k-1} + increment with compensated summation.
  CompensatedState latest{ys.back(), {}};

  for (long n = 0; n + k <= n_steps; ++n) {
    const double t_n = traj.time(n);
    const bool last = n + k == n_steps;
    Vector f_new;
    switch (method.mode) {
      case StepMode::Explicit:
        latest.add(explicit_increment(method.coeffs, ys, fs, h));
        break;
      case StepMode::PredictorCorrector:
        latest.add(pece_increment(*method.predictor, method.coeffs, t_n, ys, fs, h, rhs));
        break;
      case StepMode::Implicit:
        try {
          ImplicitStep step = solve_implicit(method.coeffs, t_n, ys, fs, h, rhs, newton);
          latest.add(step.delta);
          // f at the Newton iterate is reused; it matches the stored state to rounding.
          f_new = std::move(step.f);
        } catch (const NewtonFailure& failure) {
          throw failure.at_step(n + k);
        }
        break;
    }
    Vector y_new = latest.value;
    if (f_new.size() == 0 && !last) {
      f_new = rhs(traj.time(n + k), y_new);
    }
    traj.states.push_back(y_new);
    if (!last) {
      std::rotate(ys.begin(), ys.begin() + 1, ys.end());
      std::rotate(fs.begin(), fs.begin() + 1, fs.end());
      ys.back() = std::move(y_new);
      fs.back() = std::move(f_new);
    }
  }
  traj.f_eval_count = rhs.count();
  return traj;
}

}  // namespace lmm
