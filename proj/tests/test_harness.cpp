#include <cmath>

#include "doctest.h"
#include "lmm/harness.hpp"
#include "lmm/rgre.hpp"

using namespace lmm;

TEST_CASE("reference solutions") {
  const Ivp d = make_dahlquist();
  const Trajectory ref = reference_solution(d);
  CHECK(ref.steps() == kReferenceSteps);
  const Trajectory raw = rk6_integrate(d, kReferenceSteps);
  double worst = 0.0;
  for (long n = 0; n <= kReferenceSteps; n += 97) {
    worst = std::max(worst, std::abs(raw.states[n][0] - std::exp(-5.0 * raw.time(n))));
  }
  CHECK(worst < 1e-12);

  const Ivp z = make_ivp("zero", 0.0, 3.0, Vector::Constant(2, 0.5),
                         [](double, const Vector& y) { return Vector::Zero(y.size()); });
  for (const auto& y : reference_solution(z, 1024).states) CHECK(y == z.y0);
}

TEST_CASE("lotka-volterra reference is self-consistent") {
  const Ivp lv = make_lotka_volterra();
  const Trajectory a = reference_solution(lv);
  const Trajectory b = reference_solution(lv, 2 * kReferenceSteps);
  CHECK((a.states.back() - b.states.back()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rk6 reference has order six") {
  const Ivp d = make_dahlquist();
  auto err = [&](long n) { return std::abs(rk6_integrate(d, n).states.back()[0] - std::exp(-5.0)); };
  CHECK(std::log2(err(32) / err(64)) == doctest::Approx(6.0).epsilon(0.05));
}

TEST_CASE("reference validation rejects a wrong exact solution") {
  const Ivp bad = make_ivp("bad", 0.0, 1.0, Vector::Constant(1, 1.0),
                           [](double, const Vector& y) { return Vector(-y); }, {},
                           [](double t) { return Vector::Constant(1, 1.0 + t); });
  CHECK_THROWS_AS(reference_solution(bad, 256), NumericalError);
}

TEST_CASE("error measures") {
  Trajectory ref;
  ref.h = 0.25;
  for (int i = 0; i <= 8; ++i) ref.states.push_back(Vector::Constant(2, i));
  Trajectory t;
  t.h = 0.5;
  for (int i = 0; i <= 4; ++i) t.states.push_back(ref.states[2 * i]);
  CHECK(max_norm_error(ref, ref) == 0.0);
  CHECK(max_norm_error(t, ref) == 0.0);

  Vector c(2);
  c << 0.3, -0.7;
  for (auto& y : t.states) y += c;
  CHECK(max_norm_error(t, ref) == doctest::Approx(0.7));
  t.states[1][0] += 5.0;
  CHECK(max_norm_error(t, ref) == doctest::Approx(5.3));
  CHECK(final_time_error(t, ref) == doctest::Approx(0.7));

  Trajectory odd;
  odd.h = 1.0 / 3;
  for (int i = 0; i <= 3; ++i) odd.states.push_back(Vector::Zero(2));
  CHECK_THROWS_AS(max_norm_error(odd, ref), std::invalid_argument);
  CHECK_THROWS_AS(final_time_error(odd, ref), std::invalid_argument);
  CHECK_THROWS_AS(max_norm_error(ref, t), std::invalid_argument);
}

TEST_CASE("order estimates") {
  CHECK(estimated_order(0.01, 0.000625) == doctest::Approx(4.0));
  CHECK(estimated_order(1e-3, 1e-3) == 0.0);
  CHECK_THROWS_AS(estimated_order(0.0, 1e-3), NumericalError);
  CHECK_THROWS_AS(estimated_order(1e-3, -1.0), NumericalError);
}

TEST_CASE("AB2 error level and slope") {
  const Ivp d = make_dahlquist();
  const Trajectory ref = reference_solution(d);
  const double e1024 = max_norm_error(integrate(method_from_name("ab2"), d, 1024), ref);
  const double e512 = max_norm_error(integrate(method_from_name("ab2"), d, 512), ref);
  CHECK(e1024 > 1e-7);
  CHECK(e1024 < 1e-4);
  CHECK(std::abs(std::log2(e512 / e1024) - 2.0) < 0.1);
}

TEST_CASE("convergence study rows") {
  const Ivp d = make_dahlquist();
  const Trajectory ref = reference_solution(d);
  const std::vector<long> ns = doubling_grids(64, 512);
  CHECK(ns == std::vector<long>{64, 128, 256, 512});
  const ConvergenceReport r = convergence_study(method_from_name("ab2"), 2, d, ns, {}, &ref);
  CHECK(r.method == "ab2");
  CHECK(r.ell == 2);
  CHECK(r.problem == "dahlquist");
  REQUIRE(r.rows.size() == 4);
  CHECK_FALSE(r.rows[0].estimated_order.has_value());
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].n_coarse == 2 * r.rows[i - 1].n_coarse);
    CHECK(r.rows[i].max_error < r.rows[i - 1].max_error);
    REQUIRE(r.rows[i].estimated_order.has_value());
    CHECK(std::abs(*r.rows[i].estimated_order - 4.0) < 0.15);
  }
  const RgreResult direct = run_rgre(method_from_name("ab2"), d, 64, 2);
  CHECK(r.rows[0].f_evals == direct.total_f_evals);

  const ConvergenceReport fin =
      convergence_study(method_from_name("ab2"), 2, d, ns, {}, &ref, ErrorMeasure::FinalTime);
  CHECK(fin.rows[0].max_error <= r.rows[0].max_error);

  const auto slope = fitted_slope(r);
  REQUIRE(slope.has_value());
  CHECK(std::abs(*slope - 4.0) < 0.15);
}

TEST_CASE("base method studies and final order per (p, ell)") {
  const Ivp d = make_dahlquist();
  const Trajectory ref = reference_solution(d);
  for (const char* name : {"ab2", "am3", "bdf2", "bdf3"}) {
    for (int ell = 0; ell <= 1; ++ell) {
      CAPTURE(name);
      CAPTURE(ell);
      const MethodSpec m = method_from_name(name);
      const std::vector<long> ns{128, 256};
      const ConvergenceReport r = convergence_study(m, ell, d, ns, {}, &ref);
      const double target = m.coeffs.p + ell;
      CHECK(std::abs(*r.rows[1].estimated_order - target) < 0.35);
    }
  }
}

TEST_CASE("convergence study validation") {
  const Ivp d = make_dahlquist();
  const MethodSpec m = method_from_name("ab2");
  const std::vector<long> empty;
  const std::vector<long> uneven{64, 100};
  CHECK_THROWS_AS(convergence_study(m, 1, d, empty), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(m, 1, d, uneven), std::invalid_argument);
  const std::vector<long> ok{64};
  CHECK_THROWS_AS(convergence_study(m, -1, d, ok), std::invalid_argument);
  CHECK(error_measure_from_name("final") == ErrorMeasure::FinalTime);
  CHECK(error_measure_from_name("all") == ErrorMeasure::AllPoints);
  CHECK_THROWS_AS(error_measure_from_name("mean"), std::invalid_argument);
}

TEST_CASE("newton failures surface as numerical errors with grid context") {
  const Ivp blowup = make_ivp("blowup", 0.0, 1.0, Vector::Constant(1, 1.0),
                              [](double, const Vector& y) { return Vector(y.array().square() * 40.0); });
  NewtonConfig cfg;
  cfg.max_iters = 2;
  const std::vector<long> ns{8};
  Trajectory ref = rk6_integrate(make_dahlquist(), 64);
  try {
    convergence_study(method_from_name("bdf2"), 1, blowup, ns, cfg, &ref);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("n=8") != std::string::npos);
  }
}

TEST_CASE("fitted slope ignores rows under the floor") {
  ConvergenceReport r;
  r.rows = {{64, 1e-4, {}, 0}, {128, 1e-4 / 16, {}, 0}, {256, 1e-4 / 256, {}, 0}, {512, 1e-13, {}, 0}};
  CHECK(*fitted_slope(r, 1e-11) == doctest::Approx(4.0));
  r.rows.resize(1);
  CHECK_FALSE(fitted_slope(r).has_value());
}
