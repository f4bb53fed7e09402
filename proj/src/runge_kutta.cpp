#include "lmm/runge_kutta.hpp"

#include "lmm/stepping.hpp"

namespace lmm {

const ButcherTableau& ralston2() {
  static const ButcherTableau t{2, {0.0, 2.0 / 3.0}, {{}, {2.0 / 3.0}}, {0.25, 0.75}};
  return t;
}

const ButcherTableau& ralston3() {
  static const ButcherTableau t{
      3, {0.0, 0.5, 0.75}, {{}, {0.5}, {0.0, 0.75}}, {2.0 / 9.0, 1.0 / 3.0, 4.0 / 9.0}};
  return t;
}

const ButcherTableau& butcher6() {
  static const ButcherTableau t{
      6,
      {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 0.5, 0.5, 1.0},
      {{},
       {1.0 / 3.0},
       {0.0, 2.0 / 3.0},
       {1.0 / 12.0, 1.0 / 3.0, -1.0 / 12.0},
       {-1.0 / 16.0, 9.0 / 8.0, -3.0 / 16.0, -3.0 / 8.0},
       {0.0, 9.0 / 8.0, -3.0 / 8.0, -3.0 / 4.0, 0.5},
       {9.0 / 44.0, -9.0 / 11.0, 63.0 / 44.0, 18.0 / 11.0, 0.0, -16.0 / 11.0}},
      {11.0 / 120.0, 0.0, 27.0 / 40.0, 27.0 / 40.0, -4.0 / 15.0, -4.0 / 15.0, 11.0 / 120.0}};
  return t;
}

Vector rk_increment(const ButcherTableau& tableau, CountedRhs& rhs, double t, const Vector& y,
                    double h, const Vector* f0) {
  const int s = tableau.stages();
  std::vector<Vector> k(static_cast<std::size_t>(s));
  k[0] = f0 != nullptr ? *f0 : rhs(t, y);
  for (int i = 1; i < s; ++i) {
    Vector stage = y;
    for (int j = 0; j < i; ++j) {
      if (tableau.a[i][j] != 0.0) {
        stage += (h * tableau.a[i][j]) * k[j];
      }
    }
    k[i] = rhs(t + tableau.c[i] * h, stage);
  }
  Vector inc = Vector::Zero(y.size());
  for (int i = 0; i < s; ++i) {
    if (tableau.b[i] != 0.0) {
      inc += (h * tableau.b[i]) * k[i];
    }
  }
  return inc;
}

Vector rk_step(const ButcherTableau& tableau, CountedRhs& rhs, double t, const Vector& y,
               double h, const Vector* f0) {
  return y + rk_increment(tableau, rhs, t, y, h, f0);
}

void CompensatedState::add(const Vector& increment) {
  if (carry.size() != value.size()) carry = Vector::Zero(value.size());
  const Vector corrected = increment - carry;
  const Vector sum = value + corrected;
  carry = (sum - value) - corrected;
  value = sum;
}

}  // namespace lmm
