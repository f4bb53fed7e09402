#include "lmm/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace lmm {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;

// Polynomial with coefficients c[0..deg], c[j] multiplying zeta^j.
Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (std::size_t j = c.size() - 1; j >= 1; --j) {
    acc = acc * z + static_cast<double>(j) * c[j];
  }
  return acc;
}

std::vector<Complex> characteristic_coefficients(const LmmCoefficients& coeffs, Complex mu) {
  std::vector<Complex> c(static_cast<std::size_t>(coeffs.k) + 1);
  for (int j = 0; j <= coeffs.k; ++j) c[j] = coeffs.alpha[j] - mu * coeffs.beta[j];
  return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const auto degree = static_cast<Eigen::Index>(c.size()) - 1;
  if (degree < 1) return {};
  ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
  for (Eigen::Index j = 0; j < degree; ++j) {
    companion(0, j) = -c[static_cast<std::size_t>(degree - 1 - j)] / c.back();
  }
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  const Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + degree);
  // A couple of Newton sweeps tighten simple roots near the unit circle.
  for (auto& z : roots) {
    for (int it = 0; it < 2; ++it) {
      const Complex d = horner_derivative(c, z);
      if (std::abs(d) < 1e-8) break;
      const Complex next = z - horner(c, z) / d;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      z = next;
    }
  }
  return roots;
}

constexpr double kDegrees = 180.0 / std::numbers::pi;

}  // namespace

CompanionMatrix companion_matrix(const LmmCoefficients& coeffs) {
  const int k = coeffs.k;
  if (coeffs.alpha.at(k) == 0.0) {
    throw std::invalid_argument(coeffs.name() + ": alpha_k must be nonzero");
  }
  Matrix a = Matrix::Zero(k, k);
  for (int j = 0; j < k; ++j) a(0, j) = -coeffs.alpha[k - 1 - j] / coeffs.alpha[k];
  for (int i = 1; i < k; ++i) a(i, i - 1) = 1.0;
  return {a};
}

RootConditionReport check_root_condition(const LmmCoefficients& coeffs, double tol) {
  RootConditionReport report;
  const Matrix a = companion_matrix(coeffs).entries;
  const Eigen::EigenSolver<Matrix> solver(a, false);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    report.eigenvalues.push_back(solver.eigenvalues()[i]);
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });

  const Complex* unit_root = nullptr;
  for (const auto& z : report.eigenvalues) {
    report.spectral_radius = std::max(report.spectral_radius, std::abs(z));
    if (std::abs(std::abs(z) - 1.0) <= tol) {
      ++report.unit_modulus_count;
      unit_root = &z;
    }
  }

  std::vector<Complex> rho(coeffs.alpha.begin(), coeffs.alpha.end());
  if (report.spectral_radius > 1.0 + tol) {
    report.diagnostic = "eigenvalue outside the unit disk (spectral radius " +
                        std::to_string(report.spectral_radius) + ")";
  } else if (report.unit_modulus_count != 1) {
    report.diagnostic = std::to_string(report.unit_modulus_count) +
                        " eigenvalues on the unit circle, expected exactly one";
  } else if (std::abs(*unit_root - 1.0) > tol) {
    report.diagnostic = "the unit-modulus eigenvalue is not 1";
  } else if (std::abs(horner_derivative(rho, 1.0)) <= tol) {
    report.diagnostic = "eigenvalue 1 is not simple";
  } else {
    report.satisfied = true;
  }
  return report;
}

std::vector<Complex> characteristic_roots(const LmmCoefficients& coeffs, Complex mu) {
  return polynomial_roots(characteristic_coefficients(coeffs, mu));
}

StabilityVerdict in_stability_region(const LmmCoefficients& coeffs, Complex mu, double tol) {
  StabilityVerdict verdict;
  verdict.mu = mu;
  const std::vector<Complex> c = characteristic_coefficients(coeffs, mu);
  if (std::abs(c.back()) < tol) {
    verdict.excluded = true;
    return verdict;
  }
  double max_modulus = 0.0;
  bool stable = true;
  for (const Complex& z : polynomial_roots(c)) {
    const double m = std::abs(z);
    max_modulus = std::max(max_modulus, m);
    if (m <= 1.0 - tol) continue;
    if (m > 1.0 + tol || std::abs(horner_derivative(c, z)) <= tol) stable = false;
  }
  verdict.stable = stable;
  verdict.max_root_modulus = max_modulus;
  return verdict;
}

StabilityVerdict in_rgre_stability_region(const LmmCoefficients& coeffs, int ell, Complex mu,
                                          double tol) {
  if (ell < 0) {
    throw std::invalid_argument("in_rgre_stability_region: ell must be >= 0");
  }
  StabilityVerdict verdict;
  verdict.mu = mu;
  verdict.stable = true;
  double max_modulus = 0.0;
  for (int j = 0; j <= ell; ++j) {
    const StabilityVerdict part = in_stability_region(coeffs, mu / std::ldexp(1.0, j), tol);
    if (part.excluded) {
      verdict.excluded = true;
      verdict.stable = false;
      verdict.max_root_modulus.reset();
      return verdict;
    }
    verdict.stable = verdict.stable && part.stable;
    max_modulus = std::max(max_modulus, *part.max_root_modulus);
  }
  verdict.max_root_modulus = max_modulus;
  return verdict;
}

BoundaryLocus boundary_locus(const LmmCoefficients& coeffs, int n_theta) {
  if (n_theta < 16) {
    throw std::invalid_argument("boundary_locus: n_theta must be >= 16");
  }
  const std::vector<Complex> rho(coeffs.alpha.begin(), coeffs.alpha.end());
  const std::vector<Complex> sigma(coeffs.beta.begin(), coeffs.beta.end());
  BoundaryLocus locus;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n_theta;
    const Complex z = std::polar(1.0, theta);
    const Complex s = horner(sigma, z);
    if (std::abs(s) < 1e-12) continue;
    locus.theta.push_back(theta);
    locus.mu.push_back(horner(rho, z) / s);
  }
  if (locus.mu.empty()) {
    throw NumericalError(coeffs.name() + ": every boundary-locus sample is a pole");
  }
  return locus;
}

namespace {

class AngleProbe {
 public:
  AngleProbe(const LmmCoefficients& coeffs, int ell) : coeffs_(coeffs), ell_(ell) {}

  // Stability along the ray arg(-mu) = phi (radians).
  bool ray_stable(double phi) const {
    constexpr int kRadii = 60;
    const double log_lo = std::log(1e-3);
    const double log_hi = std::log(1e6);
    const double step = (log_hi - log_lo) / (kRadii - 1);
    std::vector<double> modulus(kRadii);
    for (int i = 0; i < kRadii; ++i) {
      const auto v = probe(phi, log_lo + i * step);
      if (!v.stable) return false;
      modulus[i] = *v.max_root_modulus;
    }
    // Refine around the three samples closest to instability.
    std::vector<int> order(kRadii);
    for (int i = 0; i < kRadii; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](int a, int b) { return modulus[a] > modulus[b]; });
    for (int r = 0; r < 3; ++r) {
      const int i = order[r];
      const double lo = log_lo + std::max(i - 1, 0) * step;
      const double hi = log_lo + std::min(i + 1, kRadii - 1) * step;
      if (!refine(phi, lo, hi)) return false;
    }
    return true;
  }

  bool sector_stable(double alpha) const {
    constexpr int kRays = 8;
    for (int i = kRays; i >= 0; --i) {
      if (!ray_stable(alpha * i / kRays)) return false;
    }
    return true;
  }

 private:
  StabilityVerdict probe(double phi, double log_r) const {
    const Complex mu = -std::polar(std::exp(log_r), phi);
    return in_rgre_stability_region(coeffs_, ell_, mu);
  }

  // Golden-section maximisation of the root modulus over log r in [lo, hi].
  bool refine(double phi, double lo, double hi) const {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    auto v1 = probe(phi, x1);
    auto v2 = probe(phi, x2);
    for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
      if (!v1.stable || !v2.stable) return false;
      if (*v1.max_root_modulus > *v2.max_root_modulus) {
        b = x2;
        x2 = x1;
        v2 = v1;
        x1 = b - g * (b - a);
        v1 = probe(phi, x1);
      } else {
        a = x1;
        x1 = x2;
        v1 = v2;
        x2 = a + g * (b - a);
        v2 = probe(phi, x2);
      }
    }
    return v1.stable && v2.stable;
  }

  const LmmCoefficients& coeffs_;
  int ell_;
};

}  // namespace

std::optional<double> alpha_angle(const LmmCoefficients& coeffs, int ell, double angular_tol) {
  const AngleProbe probe(coeffs, ell);
  if (!probe.ray_stable(0.0)) return std::nullopt;
  if (probe.sector_stable(90.0 / kDegrees)) return 90.0;
  double lo = 0.0;
  double hi = 90.0;
  while (hi - lo > angular_tol) {
    const double mid = 0.5 * (lo + hi);
    (probe.sector_stable(mid / kDegrees) ? lo : hi) = mid;
  }
  return lo;
}

Complex RegionGrid::point(int ix, int iy) const {
  const double re = nx > 1 ? re_min + (re_max - re_min) * ix / (nx - 1) : re_min;
  const double im = ny > 1 ? im_min + (im_max - im_min) * iy / (ny - 1) : im_min;
  return {re, im};
}

std::vector<RegionSample> sample_region(const LmmCoefficients& coeffs, int ell,
                                        const RegionGrid& grid, double tol) {
  std::vector<RegionSample> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex mu = grid.point(ix, iy);
      const StabilityVerdict v = ell > 0 ? in_rgre_stability_region(coeffs, ell, mu, tol)
                                         : in_stability_region(coeffs, mu, tol);
      out.push_back({mu, v.stable, v.excluded});
    }
  }
  return out;
}

std::vector<bool> near_polylines(const std::vector<std::vector<Complex>>& polylines,
                                 const RegionGrid& grid, double width) {
  std::vector<bool> mask(static_cast<std::size_t>(grid.nx) * grid.ny, false);
  const double dx = (grid.re_max - grid.re_min) / std::max(grid.nx - 1, 1);
  const double dy = (grid.im_max - grid.im_min) / std::max(grid.ny - 1, 1);
  // Segments longer than this straddle a pole of the locus and are skipped.
  const double max_segment = 0.5;
  auto index_range = [](double lo, double hi, double origin, double spacing, int n) {
    const int first = std::max(0, static_cast<int>(std::ceil((lo - origin) / spacing)));
    const int last = std::min(n - 1, static_cast<int>(std::floor((hi - origin) / spacing)));
    return std::pair{first, last};
  };
  for (const auto& line : polylines) {
    const std::size_t n = line.size();
    for (std::size_t s = 0; s < n; ++s) {
      const Complex a = line[s];
      const Complex b = line[(s + 1) % n];
      const Complex ab = b - a;
      if (std::abs(ab) > max_segment) continue;
      const auto [x0, x1] = index_range(std::min(a.real(), b.real()) - width,
                                        std::max(a.real(), b.real()) + width, grid.re_min, dx,
                                        grid.nx);
      const auto [y0, y1] = index_range(std::min(a.imag(), b.imag()) - width,
                                        std::max(a.imag(), b.imag()) + width, grid.im_min, dy,
                                        grid.ny);
      for (int iy = y0; iy <= y1; ++iy) {
        for (int ix = x0; ix <= x1; ++ix) {
          const Complex p = grid.point(ix, iy);
          const double len2 = std::norm(ab);
          double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
          t = std::clamp(t, 0.0, 1.0);
          if (std::abs(p - (a + t * ab)) <= width) {
            mask[static_cast<std::size_t>(iy) * grid.nx + ix] = true;
          }
        }
      }
    }
  }
  return mask;
}

}  // namespace lmm
