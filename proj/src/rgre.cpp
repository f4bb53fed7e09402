#include "lmm/rgre.hpp"

#include <cmath>
#include <future>
#include <sstream>

namespace lmm {

namespace {

using Integer = boost::multiprecision::cpp_int;

Rational pow2_inverse(int exponent) {
  return Rational(Integer(1), Integer(1) << exponent);
}

// Gauss-Jordan elimination over the rationals; the system is nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      throw NumericalError("extrapolation moment system is singular");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[row][c] -= factor * a[col][c];
      b[row] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

std::vector<double> ExtrapolationScheme::weights() const {
  std::vector<double> w;
  w.reserve(gamma.size());
  for (const auto& g : gamma) w.push_back(g.convert_to<double>());
  return w;
}

ExtrapolationScheme gamma_coefficients(int p, int ell) {
  if (p < 1) {
    throw std::invalid_argument("gamma_coefficients: p must be >= 1");
  }
  if (ell < 1 || ell > 8) {
    throw std::invalid_argument("gamma_coefficients: ell must be in 1..8");
  }
  const auto n = static_cast<std::size_t>(ell) + 1;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) a[0][j] = 1;
  b[0] = 1;
  for (int q = 0; q < ell; ++q) {
    for (std::size_t j = 0; j < n; ++j) {
      a[q + 1][j] = pow2_inverse(static_cast<int>(j) * (p + q));
    }
  }
  return {p, ell, solve_exact(std::move(a), std::move(b))};
}

namespace {

Integer common_denominator(const ExtrapolationScheme& scheme) {
  Integer common = 1;
  for (const auto& g : scheme.gamma) {
    const Integer d = denominator(g);
    common = common / boost::multiprecision::gcd(common, d) * d;
  }
  return common;
}

}  // namespace

std::string format_gamma(const ExtrapolationScheme& scheme) {
  const Integer common = common_denominator(scheme);
  std::ostringstream out;
  for (std::size_t j = 0; j < scheme.gamma.size(); ++j) {
    const Rational scaled = scheme.gamma[j] * common;
    out << (j ? "," : "") << numerator(scaled) << "/" << common;
  }
  return out.str();
}

Trajectory combine(std::span<const Trajectory> components, const ExtrapolationScheme& scheme) {
  const std::size_t count = static_cast<std::size_t>(scheme.ell) + 1;
  if (components.size() != count) {
    throw std::invalid_argument("combine: expected " + std::to_string(count) +
                                " components, got " + std::to_string(components.size()));
  }
  const long n_coarse = components[0].steps();
  for (std::size_t j = 0; j < count; ++j) {
    if (components[j].steps() != (n_coarse << j)) {
      throw std::invalid_argument("combine: component " + std::to_string(j) +
                                  " does not nest (expected " + std::to_string(n_coarse << j) +
                                  " steps, got " + std::to_string(components[j].steps()) + ")");
    }
    if (components[j].t0 != components[0].t0) {
      throw std::invalid_argument("combine: components start at different times");
    }
  }

  // Integer numerators over the common denominator keep the weights exact.
  const Integer lcd = common_denominator(scheme);
  std::vector<double> num;
  for (const auto& g : scheme.gamma) num.push_back(Rational(g * lcd).convert_to<double>());
  const double den = lcd.convert_to<double>();

  Trajectory out;
  out.t0 = components[0].t0;
  out.h = components[0].h;
  out.states.reserve(static_cast<std::size_t>(n_coarse) + 1);
  const auto dim = components[0].states[0].size();
  for (long n = 0; n <= n_coarse; ++n) {
    Vector sum(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      // Dot2 (Ogita, Rump, Oishi): error-free products and sums.
      double s = 0.0, err = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        const double y = components[j].states[static_cast<std::size_t>(n << j)][i];
        const double prod = num[j] * y;
        const double prod_err = std::fma(num[j], y, -prod);
        const double next = s + prod;
        const double z = next - s;
        err += ((s - (next - z)) + (prod - z)) + prod_err;
        s = next;
      }
      sum[i] = (s + err) / den;
    }
    out.states.push_back(std::move(sum));
  }
  for (const auto& c : components) out.f_eval_count += c.f_eval_count;
  return out;
}

RgreResult run_rgre(const MethodSpec& method, const Ivp& problem, long n_coarse, int ell,
                    const NewtonConfig& newton, bool parallel) {
  if (n_coarse < method.history_size()) {
    throw std::invalid_argument("run_rgre: n_coarse must be >= " +
                                std::to_string(method.history_size()));
  }
  const ExtrapolationScheme scheme = gamma_coefficients(method.coeffs.p, ell);
  const auto count = static_cast<std::size_t>(ell) + 1;

  auto run_component = [&](int j) {
    try {
      return integrate(method, problem, n_coarse << j, newton);
    } catch (const NewtonFailure& failure) {
      throw failure.on_grid(j);
    }
  };

  RgreResult result;
  result.components.resize(count);
  if (parallel) {
    std::vector<std::future<Trajectory>> tasks;
    tasks.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
      tasks.push_back(std::async(std::launch::async, run_component, static_cast<int>(j)));
    }
    // Join everything before rethrowing so no task outlives this frame.
    std::exception_ptr first_error;
    for (std::size_t j = 0; j < count; ++j) {
      try {
        result.components[j] = tasks[j].get();
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (std::size_t j = 0; j < count; ++j) {
      result.components[j] = run_component(static_cast<int>(j));
    }
  }

  result.combined = combine(result.components, scheme);
  result.coarse_h = result.combined.h;
  result.total_f_evals = result.combined.f_eval_count;
  return result;
}

double work_ratio(const RgreResult& result) {
  if (result.components.empty() || result.components[0].f_eval_count == 0) {
    throw std::invalid_argument("work_ratio: no base-grid evaluations recorded");
  }
  return static_cast<double>(result.total_f_evals) /
         static_cast<double>(result.components[0].f_eval_count);
}

}  // namespace lmm
