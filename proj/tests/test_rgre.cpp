#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lmm/harness.hpp"
#include "lmm/rgre.hpp"

using namespace lmm;

namespace {

Rational pow2(int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= 2;
  return r;
}

// Closed-form weights for one-, two- and three-fold extrapolation.
std::vector<Rational> closed_form(int p, int ell) {
  const Rational a = pow2(p) - 1, b = pow2(p + 1) - 1, c = pow2(p + 2) - 1;
  switch (ell) {
    case 1:
      return {Rational(-1) / a, pow2(p) / a};
    case 2:
      return {Rational(1) / (a * b), -3 * pow2(p) / (a * b), pow2(2 * p + 1) / (a * b)};
    default:
      return {Rational(-1) / (a * b * c), 7 * pow2(p) / (a * b * c),
              -7 * pow2(2 * p + 1) / (a * b * c), pow2(3 * p + 3) / (a * b * c)};
  }
}

Trajectory synthetic(long n, double h, const std::function<Vector(long)>& state) {
  Trajectory t;
  t.h = h;
  for (long i = 0; i <= n; ++i) t.states.push_back(state(i));
  return t;
}

}  // namespace

TEST_CASE("gamma closed forms") {
  for (int p = 1; p <= 6; ++p) {
    for (int ell = 1; ell <= 3; ++ell) {
      CAPTURE(p);
      CAPTURE(ell);
      CHECK(gamma_coefficients(p, ell).gamma == closed_form(p, ell));
    }
  }
  CHECK(gamma_coefficients(2, 1).gamma == std::vector<Rational>{Rational(-1, 3), Rational(4, 3)});
  CHECK(gamma_coefficients(1, 3).gamma ==
        std::vector<Rational>{Rational(-1, 21), Rational(14, 21), Rational(-56, 21), Rational(64, 21)});
}

TEST_CASE("gamma moment conditions hold exactly") {
  for (int p = 1; p <= 7; ++p) {
    for (int ell = 1; ell <= 8; ++ell) {
      const auto g = gamma_coefficients(p, ell).gamma;
      REQUIRE(g.size() == static_cast<std::size_t>(ell + 1));
      Rational sum = 0;
      for (const auto& x : g) sum += x;
      CHECK(sum == 1);
      for (int q = 0; q < ell; ++q) {
        Rational m = 0;
        for (int j = 0; j <= ell; ++j) m += g[j] / pow2(j * (p + q));
        CHECK(m == 0);
      }
    }
  }
}

TEST_CASE("gamma formatting and validation") {
  CHECK(format_gamma(gamma_coefficients(2, 2)) == "1/21,-12/21,32/21");
  CHECK(format_gamma(gamma_coefficients(2, 1)) == "-1/3,4/3");
  CHECK_THROWS_AS(gamma_coefficients(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gamma_coefficients(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_coefficients(2, 9), std::invalid_argument);
  const auto w = gamma_coefficients(2, 1).weights();
  CHECK(w[1] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("combine keeps constants and annihilates the expansion") {
  const auto scheme = gamma_coefficients(2, 1);
  std::vector<Trajectory> flat{synthetic(4, 0.25, [](long) { return Vector::Constant(2, 1.5); }),
                               synthetic(8, 0.125, [](long) { return Vector::Constant(2, 1.5); })};
  const Trajectory c = combine(flat, scheme);
  CHECK(c.steps() == 4);
  for (const auto& y : c.states) CHECK((y.array() - 1.5).abs().maxCoeff() < 1e-15);

  const double h = 0.1;
  std::vector<Trajectory> quad{synthetic(10, h, [&](long) { return Vector::Constant(1, 1 + h * h); }),
                               synthetic(20, h / 2, [&](long) { return Vector::Constant(1, 1 + h * h / 4); })};
  for (const auto& y : combine(quad, scheme).states) CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));

  for (int p = 1; p <= 4; ++p) {
    for (int ell = 1; ell <= 3; ++ell) {
      const auto s = gamma_coefficients(p, ell);
      const long n = 16;
      const double H = 1.0 / n;
      std::vector<Trajectory> comps;
      for (int j = 0; j <= ell; ++j) {
        const double hj = H / std::pow(2.0, j);
        comps.push_back(synthetic(n << j, hj, [&](long i) {
          const double t = i * hj;
          double y = std::sin(t);
          for (int q = 0; q < ell; ++q) y += (q + 1.3) * std::pow(hj, p + q) * std::cos((q + 1) * t);
          return Vector::Constant(1, y);
        }));
      }
      const Trajectory c = combine(comps, s);
      for (long i = 0; i <= n; ++i) CHECK(std::abs(c.states[i][0] - std::sin(i * H)) < 1e-12);
    }
  }
}

TEST_CASE("combine rejects mismatched grids") {
  const auto scheme = gamma_coefficients(2, 1);
  std::vector<Trajectory> bad{synthetic(4, 0.25, [](long) { return Vector::Zero(1); }),
                              synthetic(6, 0.125, [](long) { return Vector::Zero(1); })};
  CHECK_THROWS_AS(combine(bad, scheme), std::invalid_argument);
  std::vector<Trajectory> missing{synthetic(4, 0.25, [](long) { return Vector::Zero(1); })};
  CHECK_THROWS_AS(combine(missing, scheme), std::invalid_argument);
}

TEST_CASE("composed single extrapolations equal the double one") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 6;
    const long n = 8;
    std::vector<Trajectory> comps;
    for (int j = 0; j <= 2; ++j) {
      comps.push_back(synthetic(n << j, 1.0 / (n << j), [&](long) {
        Vector v(3);
        for (auto& x : v) x = 1.0 + 1e-3 * dist(rng);
        return v;
      }));
    }
    const auto s1 = gamma_coefficients(p, 1);
    const Trajectory coarse = combine(std::vector<Trajectory>{comps[0], comps[1]}, s1);
    const Trajectory fine = combine(std::vector<Trajectory>{comps[1], comps[2]}, s1);
    const double w = std::pow(2.0, p + 1);
    const Trajectory r2 = combine(comps, gamma_coefficients(p, 2));
    for (long i = 0; i <= n; ++i) {
      const Vector multiple = (w * fine.states[2 * i] - coarse.states[i]) / (w - 1);
      const double rel = (multiple - r2.states[i]).cwiseAbs().maxCoeff() /
                         r2.states[i].cwiseAbs().maxCoeff();
      CHECK(rel < 1e-14);
    }
  }
}

TEST_CASE("run_rgre structure and work") {
  const Ivp p = make_lotka_volterra();
  const MethodSpec ab2 = method_from_name("ab2");
  const RgreResult r = run_rgre(ab2, p, 512, 2);
  CHECK(r.coarse_h == doctest::Approx(62.0 / 512));
  REQUIRE(r.components.size() == 3);
  for (int j = 0; j <= 2; ++j) CHECK(r.components[j].steps() == (512L << j));
  const auto g = gamma_coefficients(2, 2).weights();
  for (long n = 0; n <= 512; n += 37) {
    const Vector expect = g[0] * r.components[0].states[n] + g[1] * r.components[1].states[2 * n] +
                          g[2] * r.components[2].states[4 * n];
    CHECK((expect - r.combined.states[n]).cwiseAbs().maxCoeff() <= 1e-14 * expect.cwiseAbs().maxCoeff());
  }
  long sum = 0;
  for (const auto& c : r.components) sum += c.f_eval_count;
  CHECK(r.total_f_evals == sum);
  CHECK(work_ratio(r) == doctest::Approx(7.0).epsilon(0.05));
  CHECK(work_ratio(run_rgre(ab2, p, 512, 1)) == doctest::Approx(3.0).epsilon(0.05));
  CHECK(work_ratio(run_rgre(ab2, p, 512, 3)) == doctest::Approx(15.0).epsilon(0.05));
}

TEST_CASE("run_rgre is deterministic across scheduling") {
  const Ivp p = make_van_der_pol();
  const MethodSpec m = method_from_name("bdf3");
  const RgreResult a = run_rgre(m, p, 256, 2, {}, true);
  const RgreResult b = run_rgre(m, p, 256, 2, {}, true);
  const RgreResult c = run_rgre(m, p, 256, 2, {}, false);
  CHECK(a.combined.states == b.combined.states);
  CHECK(a.combined.states == c.combined.states);
}

TEST_CASE("extrapolated AB2 gains an order") {
  const Ivp p = make_dahlquist();
  const Trajectory ref = reference_solution(p);
  const MethodSpec ab2 = method_from_name("ab2");
  const double e1 = max_norm_error(run_rgre(ab2, p, 128, 1).combined, ref);
  const double e2 = max_norm_error(run_rgre(ab2, p, 256, 1).combined, ref);
  CHECK(std::log2(e1 / e2) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("zero problem stays constant under extrapolation") {
  const Ivp z = make_ivp("zero", 0.0, 1.0, Vector::Constant(1, 2.0),
                         [](double, const Vector& y) { return Vector::Zero(y.size()); });
  const RgreResult r = run_rgre(method_from_name("ab2"), z, 16, 1);
  for (const auto& y : r.combined.states) CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("component failures are tagged with the grid index") {
  const Ivp blowup = make_ivp("blowup", 0.0, 1.0, Vector::Constant(1, 1.0),
                              [](double, const Vector& y) { return Vector(y.array().square() * 40.0); });
  NewtonConfig cfg;
  cfg.max_iters = 2;
  try {
    run_rgre(method_from_name("bdf2"), blowup, 8, 1, cfg);
    FAIL("expected NewtonFailure");
  } catch (const NewtonFailure& e) {
    CHECK(e.grid_index().has_value());
  }
  CHECK_THROWS_AS(run_rgre(method_from_name("ab3"), make_dahlquist(), 2, 1), std::invalid_argument);
}
