#include "lmm/ivp.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace lmm {

NewtonFailure NewtonFailure::at_step(long step) const {
  std::ostringstream msg;
  msg << what() << " (step " << step << ")";
  NewtonFailure copy(msg.str(), last_residual_);
  copy.step_index_ = step;
  copy.grid_index_ = grid_index_;
  return copy;
}

NewtonFailure NewtonFailure::on_grid(int j) const {
  std::ostringstream msg;
  msg << what() << " (grid j=" << j << ")";
  NewtonFailure copy(msg.str(), last_residual_);
  copy.step_index_ = step_index_;
  copy.grid_index_ = j;
  return copy;
}

Ivp make_ivp(std::string name, double t0, double t_final, Vector y0, RhsFn rhs,
             JacobianFn jacobian, ExactFn exact) {
  if (!(t_final > t0)) {
    throw std::invalid_argument("ivp '" + name + "': t_final must exceed t0");
  }
  if (y0.size() == 0) {
    throw std::invalid_argument("ivp '" + name + "': empty initial state");
  }
  if (!rhs) {
    throw std::invalid_argument("ivp '" + name + "': missing right-hand side");
  }
  const Vector f0 = rhs(t0, y0);
  if (f0.size() != y0.size()) {
    throw std::invalid_argument("ivp '" + name + "': rhs(t0, y0) has wrong length");
  }
  if (exact) {
    const Vector e0 = exact(t0);
    const double scale = std::max(1.0, y0.lpNorm<Eigen::Infinity>());
    if (e0.size() != y0.size() ||
        (e0 - y0).lpNorm<Eigen::Infinity>() >
            8 * std::numeric_limits<double>::epsilon() * scale) {
      throw std::invalid_argument("ivp '" + name + "': exact(t0) differs from y0");
    }
  }

  Ivp ivp;
  ivp.name = std::move(name);
  ivp.dimension = static_cast<int>(y0.size());
  ivp.t0 = t0;
  ivp.t_final = t_final;
  ivp.y0 = std::move(y0);
  ivp.rhs = std::move(rhs);
  ivp.jacobian = std::move(jacobian);
  ivp.exact = std::move(exact);
  return ivp;
}

Ivp make_dahlquist(double lambda) {
  return make_ivp(
      "dahlquist", 0.0, 1.0, Vector::Constant(1, 1.0),
      [lambda](double, const Vector& y) -> Vector { return lambda * y; },
      [lambda](double, const Vector&) -> Matrix { return Matrix::Constant(1, 1, lambda); },
      [lambda](double t) -> Vector { return Vector::Constant(1, std::exp(lambda * t)); });
}

Ivp make_lotka_volterra() {
  auto rhs = [](double, const Vector& y) -> Vector {
    Vector f(2);
    f[0] = 0.1 * y[0] - 0.3 * y[0] * y[1];
    f[1] = 0.5 * (y[0] - 1.0) * y[1];
    return f;
  };
  auto jac = [](double, const Vector& y) -> Matrix {
    Matrix J(2, 2);
    J << 0.1 - 0.3 * y[1], -0.3 * y[0],
         0.5 * y[1], 0.5 * (y[0] - 1.0);
    return J;
  };
  Vector y0(2);
  y0 << 1.0, 1.0;
  return make_ivp("lotka-volterra", 0.0, 62.0, y0, rhs, jac);
}

Ivp make_van_der_pol() {
  auto rhs = [](double, const Vector& y) -> Vector {
    Vector f(2);
    f[0] = y[1];
    f[1] = 2.0 * (1.0 - y[0] * y[0]) * y[1] - y[0];
    return f;
  };
  auto jac = [](double, const Vector& y) -> Matrix {
    Matrix J(2, 2);
    J << 0.0, 1.0,
         -4.0 * y[0] * y[1] - 1.0, 2.0 * (1.0 - y[0] * y[0]);
    return J;
  };
  Vector y0(2);
  y0 << 2.0, 0.0;
  return make_ivp("van-der-pol", 0.0, 20.0, y0, rhs, jac);
}

namespace {

const std::map<std::string, Ivp (*)()>& registry() {
  static const std::map<std::string, Ivp (*)()> table{
      {"dahlquist", [] { return make_dahlquist(); }},
      {"lotka-volterra", &make_lotka_volterra},
      {"van-der-pol", &make_van_der_pol},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"dahlquist", "lotka-volterra", "van-der-pol"};
  return names;
}

Ivp find_problem(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string valid;
    for (const auto& n : problem_names()) {
      valid += valid.empty() ? n : ", " + n;
    }
    throw std::invalid_argument("unknown problem '" + name + "' (valid: " + valid + ")");
  }
  return it->second();
}

Matrix finite_difference_jacobian(const Ivp& problem, double t, const Vector& y) {
  const auto n = y.size();
  Matrix J(n, n);
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Vector probe = y;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double step = root_eps * (1.0 + std::abs(y[i]));
    probe[i] = y[i] + step;
    const Vector up = problem.rhs(t, probe);
    probe[i] = y[i] - step;
    const Vector down = problem.rhs(t, probe);
    probe[i] = y[i];
    J.col(i) = (up - down) / (2.0 * step);
  }
  return J;
}

}  // namespace lmm
