/**
 * @file stability.hpp
 * @brief Zero-stability and linear (absolute) stability of LMMs and their RGRE combinations.
 *
 * On y' = lambda*y with mu = h*lambda the method's recurrence has the
 * characteristic polynomial pi(zeta; mu) = rho(zeta) - mu*sigma(zeta), with
 * rho(zeta) = sum alpha_j zeta^j and sigma(zeta) = sum beta_j zeta^j.
 */
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lmm/coefficients.hpp"
#include "lmm/types.hpp"

namespace lmm {

using Complex = std::complex<double>;

/// Tolerance used for "modulus one" and root simplicity decisions.
inline constexpr double kStabilityTol = 1e-9;

/** @brief k x k companion matrix of rho, first row -alpha_{k-1..0}/alpha_k. */
struct CompanionMatrix {
  Matrix entries;
};

CompanionMatrix companion_matrix(const LmmCoefficients& coeffs);

struct RootConditionReport {
  bool satisfied = false;
  std::vector<Complex> eigenvalues;
  double spectral_radius = 0.0;
  int unit_modulus_count = 0;
  std::string diagnostic;  ///< why the condition fails; empty when satisfied
};

/**
 * @brief Root condition on the companion matrix.
 *
 * Satisfied iff all eigenvalues have modulus <= 1 + tol, exactly one has
 * modulus within tol of 1, that one lies within tol of 1, and it is a simple
 * root of rho (|rho'(1)| > tol).
 */
RootConditionReport check_root_condition(const LmmCoefficients& coeffs,
                                         double tol = kStabilityTol);

struct StabilityVerdict {
  Complex mu;
  bool stable = false;
  bool excluded = false;  ///< alpha_k - mu*beta_k vanished
  std::optional<double> max_root_modulus;  ///< unset when excluded
};

/// Roots of pi(zeta; mu), highest-degree coefficient assumed nonzero.
std::vector<Complex> characteristic_roots(const LmmCoefficients& coeffs, Complex mu);

/**
 * @brief Membership of mu in the absolute stability region.
 *
 * Stable iff every root of pi(.; mu) has modulus <= 1 - tol, or lies within tol
 * of the unit circle and is simple (|pi'(zeta)| > tol). mu with
 * |alpha_k - mu*beta_k| < tol is excluded and reported unstable.
 */
StabilityVerdict in_stability_region(const LmmCoefficients& coeffs, Complex mu,
                                     double tol = kStabilityTol);

/**
 * @brief Membership in the RGRE region, implemented as the intersection of
 * 2^j * S over j = 0..ell.
 *
 * Component j runs with step h/2^j, so it is tested at mu/2^j. The verdict is
 * stable iff every component is stable and none is excluded; max_root_modulus
 * is the largest over the components.
 */
StabilityVerdict in_rgre_stability_region(const LmmCoefficients& coeffs, int ell, Complex mu,
                                          double tol = kStabilityTol);

struct BoundaryLocus {
  std::vector<double> theta;
  std::vector<Complex> mu;
};

/// mu(theta) = rho(e^{i theta}) / sigma(e^{i theta}) for n_theta uniform theta in
/// [0, 2 pi), skipping poles of sigma. Requires n_theta >= 16.
BoundaryLocus boundary_locus(const LmmCoefficients& coeffs, int n_theta);

/**
 * @brief A(alpha) angle in degrees of the base method (ell = 0) or its RGRE
 * combination, or nullopt when the negative real axis itself is not contained.
 *
 * A candidate angle a is accepted when probes on the rays arg(-mu) = +-phi for
 * phi in [0, a] are stable at 60 log-spaced radii in [1e-3, 1e6]; on each ray
 * the sampled radius of largest root modulus is then refined by a
 * golden-section search so narrow tangencies are not stepped over. The largest
 * accepted angle is found by bisection to angular_tol degrees.
 */
std::optional<double> alpha_angle(const LmmCoefficients& coeffs, int ell,
                                  double angular_tol = 1e-4);

/** @brief One sample of a region scan. */
struct RegionSample {
  Complex mu;
  bool stable = false;
  bool excluded = false;
};

/// Axis-aligned sampling rectangle with nx x ny points including the corners.
struct RegionGrid {
  double re_min = -6.0;
  double re_max = 2.0;
  double im_min = -4.0;
  double im_max = 4.0;
  int nx = 200;
  int ny = 200;

  [[nodiscard]] Complex point(int ix, int iy) const;
};

/// Region membership (RGRE when ell >= 1) at every grid point, row-major in iy.
std::vector<RegionSample> sample_region(const LmmCoefficients& coeffs, int ell,
                                        const RegionGrid& grid, double tol = kStabilityTol);

/// Flags grid points lying within `width` of any of the polylines.
std::vector<bool> near_polylines(const std::vector<std::vector<Complex>>& polylines,
                                 const RegionGrid& grid, double width);

}  // namespace lmm
