#include "lmm/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace lmm {

namespace {

struct Table {
  int k;
  std::vector<double> alpha;
  std::vector<double> beta;
};

Table adams_bashforth(int p) {
  switch (p) {
    case 2:
      return {2, {0, -1, 1}, {-1.0 / 2, 3.0 / 2, 0}};
    case 3:
      return {3, {0, 0, -1, 1}, {5.0 / 12, -16.0 / 12, 23.0 / 12, 0}};
    case 4:
      return {4, {0, 0, 0, -1, 1}, {-9.0 / 24, 37.0 / 24, -59.0 / 24, 55.0 / 24, 0}};
    case 5:
      return {5,
              {0, 0, 0, 0, -1, 1},
              {251.0 / 720, -1274.0 / 720, 2616.0 / 720, -2774.0 / 720, 1901.0 / 720, 0}};
    case 6:
      return {6,
              {0, 0, 0, 0, 0, -1, 1},
              {-475.0 / 1440, 2877.0 / 1440, -7298.0 / 1440, 9982.0 / 1440, -7923.0 / 1440,
               4277.0 / 1440, 0}};
    default:
      throw std::invalid_argument("Adams-Bashforth order must be in 2..6, got " +
                                  std::to_string(p));
  }
}

Table adams_moulton(int p) {
  switch (p) {
    case 2:
      return {1, {-1, 1}, {1.0 / 2, 1.0 / 2}};
    case 3:
      return {2, {0, -1, 1}, {-1.0 / 12, 8.0 / 12, 5.0 / 12}};
    case 4:
      return {3, {0, 0, -1, 1}, {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24}};
    case 5:
      return {4,
              {0, 0, 0, -1, 1},
              {-19.0 / 720, 106.0 / 720, -264.0 / 720, 646.0 / 720, 251.0 / 720}};
    case 6:
      return {5,
              {0, 0, 0, 0, -1, 1},
              {27.0 / 1440, -173.0 / 1440, 482.0 / 1440, -798.0 / 1440, 1427.0 / 1440,
               475.0 / 1440}};
    default:
      throw std::invalid_argument("Adams-Moulton order must be in 2..6, got " +
                                  std::to_string(p));
  }
}

Table bdf(int p) {
  switch (p) {
    case 2:
      return {2, {1.0 / 2, -2, 3.0 / 2}, {0, 0, 1}};
    case 3:
      return {3, {-1.0 / 3, 3.0 / 2, -3, 11.0 / 6}, {0, 0, 0, 1}};
    case 4:
      return {4, {1.0 / 4, -4.0 / 3, 3, -4, 25.0 / 12}, {0, 0, 0, 0, 1}};
    case 5:
      return {5, {-1.0 / 5, 5.0 / 4, -10.0 / 3, 5, -5, 137.0 / 60}, {0, 0, 0, 0, 0, 1}};
    case 6:
      return {6,
              {1.0 / 6, -6.0 / 5, 15.0 / 4, -20.0 / 3, 15.0 / 2, -6, 49.0 / 20},
              {0, 0, 0, 0, 0, 0, 1}};
    case 7:
      return {7,
              {-1.0 / 7, 7.0 / 6, -21.0 / 5, 35.0 / 4, -35.0 / 3, 21.0 / 2, -7, 363.0 / 140},
              {0, 0, 0, 0, 0, 0, 0, 1}};
    default:
      throw std::invalid_argument("BDF order must be in 2..7, got " + std::to_string(p));
  }
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::AB:
      return "ab";
    case Family::AM:
      return "am";
    case Family::BDF:
      return "bdf";
  }
  return "?";
}

std::string LmmCoefficients::name() const { return to_string(family) + std::to_string(p); }

LmmCoefficients lmm_coefficients(Family family, int p) {
  Table t = family == Family::AB   ? adams_bashforth(p)
            : family == Family::AM ? adams_moulton(p)
                                   : bdf(p);
  return {family, t.k, p, std::move(t.alpha), std::move(t.beta)};
}

std::vector<double> order_conditions_residual(const LmmCoefficients& coeffs, int q) {
  if (q < 0) {
    throw std::invalid_argument("order_conditions_residual: q must be >= 0");
  }
  std::vector<double> residual(static_cast<std::size_t>(q) + 1, 0.0);
  for (int j = 0; j <= coeffs.k; ++j) {
    residual[0] += coeffs.alpha[j];
  }
  for (int i = 1; i <= q; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= coeffs.k; ++j) {
      sum += coeffs.alpha[j] * std::pow(j, i) - i * coeffs.beta[j] * std::pow(j, i - 1);
    }
    residual[i] = sum;
  }
  return residual;
}

}  // namespace lmm
