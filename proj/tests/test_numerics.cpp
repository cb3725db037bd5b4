#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_values.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/numerics.hpp"

using namespace tfb;

TEST_CASE("double factorial") {
  CHECK(double_factorial(-1) == 1.0);
  CHECK(double_factorial(0) == 1.0);
  CHECK(double_factorial(1) == 1.0);
  CHECK(double_factorial(2) == 2.0);
  CHECK(double_factorial(5) == 15.0);
  CHECK(double_factorial(8) == 384.0);
  CHECK(double_factorial(9) == 945.0);
}

TEST_CASE("adaptive quadrature on smooth integrands") {
  QuadOptions qo;
  auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, qo);
  CHECK(std::fabs(r.value - 1.0 / 3.0) <= 1e-14);
  CHECK(r.evaluations > 0);

  r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, qo);
  CHECK(std::fabs(r.value - 2.0) <= 1e-12);
  CHECK(std::fabs(r.value - 2.0) <= std::max(r.error, 1e-14));
}

TEST_CASE("adaptive quadrature resolves oscillation and kinks") {
  QuadOptions qo;
  qo.initial_panel_width = 0.05;
  qo.abs_tol = 1e-12;  // the true value is 0; a pure relative target can't stop
  auto r = integrate_adaptive([](double x) { return std::cos(50.0 * x); }, 0.0,
                              10.0 * M_PI, qo);
  const double exact = std::sin(500.0 * M_PI) / 50.0;  // ~0 up to roundoff
  CHECK(std::fabs(r.value - exact) <= 1e-10);

  qo = QuadOptions{};
  r = integrate_adaptive([](double x) { return std::fabs(x - 1.0 / 3.0); }, 0.0,
                         1.0, qo);
  CHECK(std::fabs(r.value - 5.0 / 18.0) <= 1e-12);
}

TEST_CASE("quadrature failure carries its best value") {
  QuadOptions qo;
  qo.max_panels = 3;
  qo.rel_tol = 1e-14;
  bool threw = false;
  try {
    integrate_adaptive([](double x) { return std::cos(40.0 * x) / (1e-4 + x); },
                       0.0, 50.0, qo);
  } catch (const quadrature_error& e) {
    threw = true;
    CHECK(std::isfinite(e.best_value));
    CHECK(e.error_estimate > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("semi-infinite quadrature with tail envelopes") {
  TailEnvelope env;
  env.kind = TailEnvelope::Kind::exponential;
  env.c = 1.0;
  env.p = 1.0;
  env.t_min = 0.0;
  QuadOptions qo;
  auto r = integrate_semi_infinite([](double t) { return std::exp(-t); }, env,
                                   qo);
  CHECK(std::fabs(r.value - 1.0) <= 1e-9);

  env.kind = TailEnvelope::Kind::power;
  env.c = 1.0;
  env.p = 3.0;
  env.t_min = 1.0;
  r = integrate_semi_infinite(
      [](double t) { return 1.0 / std::pow(1.0 + t, 3); }, env, qo);
  CHECK(std::fabs(r.value - 0.5) <= 1e-8);
}

TEST_CASE("B-spline central values") {
  // indicator convolution powers at the center: exact rationals
  CHECK(bspline_eval(2, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(bspline_eval(4, 0.5, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(bspline_eval(6, 0.5, 0.0) ==
        doctest::Approx(11.0 / 20.0).epsilon(1e-14));
  CHECK(bspline_eval(8, 0.5, 0.0) ==
        doctest::Approx(151.0 / 315.0).epsilon(1e-14));
  CHECK(bspline_eval(10, 0.5, 0.0) ==
        doctest::Approx(15619.0 / 36288.0).epsilon(1e-14));
  // off-center rational value: order 4, a = 1/4, x = 1/2
  CHECK(bspline_eval(4, 0.25, 0.5) ==
        doctest::Approx(1.0 / 48.0).epsilon(1e-13));
}

TEST_CASE("B-spline support, symmetry, and mass") {
  const int m = 4;
  const double a = 0.3;
  CHECK(bspline_eval(m, a, m * a) == 0.0);
  CHECK(bspline_eval(m, a, m * a + 1e-12) == 0.0);
  CHECK(bspline_eval(m, a, -(m * a)) == 0.0);
  CHECK(bspline_eval(m, a, 0.999 * m * a) > 0.0);
  for (double x : {0.07, 0.31, 0.65, 1.1}) {
    CHECK(bspline_eval(m, a, x) ==
          doctest::Approx(bspline_eval(m, a, -x)).epsilon(1e-14));
  }
  QuadOptions qo;
  auto r = integrate_adaptive([&](double x) { return bspline_eval(m, a, x); },
                              -m * a, m * a, qo);
  CHECK(std::fabs(r.value - std::pow(2.0 * a, m)) <= 1e-12);
}

TEST_CASE("hyperbolic ball volumes") {
  CHECK(ball_volume(2, 1.0) ==
        doctest::Approx(oracle::vol2_r1).epsilon(1e-10));
  CHECK(ball_volume(3, 2.0) ==
        doctest::Approx(oracle::vol3_r2).epsilon(1e-10));
  CHECK(ball_volume(4, 1.0) ==
        doctest::Approx(oracle::vol4_r1).epsilon(1e-10));
  CHECK(ball_volume(5, 1.0) ==
        doctest::Approx(oracle::vol5_r1).epsilon(1e-10));
  CHECK_THROWS_AS(ball_volume(1, 1.0), domain_error);
  CHECK_THROWS_AS(ball_volume(3, 0.0), domain_error);
  CHECK_THROWS_AS(ball_volume(3, 400.0), domain_error);
}

TEST_CASE("logarithmic integral") {
  CHECK(li_two() == doctest::Approx(oracle::li_2).epsilon(1e-12));
  CHECK(log_integral_complete(11.0) ==
        doctest::Approx(oracle::li_11).epsilon(1e-11));
  CHECK(log_integral_complete(1e2) ==
        doctest::Approx(oracle::li_1e2).epsilon(1e-11));
  CHECK(log_integral_complete(1e4) ==
        doctest::Approx(oracle::li_1e4).epsilon(1e-11));
  CHECK(log_integral_complete(1e6) ==
        doctest::Approx(oracle::li_1e6).epsilon(1e-11));
  CHECK(log_integral_complete(1e8) ==
        doctest::Approx(oracle::li_1e8).epsilon(1e-11));
  CHECK(log_integral_complete(std::exp(3.0)) ==
        doctest::Approx(oracle::li_exp3).epsilon(1e-11));
  CHECK(log_integral_complete(std::exp(6.0)) ==
        doctest::Approx(oracle::li_exp6).epsilon(1e-11));
  CHECK(log_integral(1e2) ==
        doctest::Approx(oracle::li_1e2_offset).epsilon(1e-11));
  CHECK(log_integral(2.0) == 0.0);
  CHECK(log_integral(1.5) < 0.0);
  CHECK_THROWS_AS(log_integral(1.0), domain_error);
  CHECK_THROWS_AS(log_integral(0.5), domain_error);
}
