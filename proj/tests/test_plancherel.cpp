#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_values.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/numerics.hpp"
#include "tfbound/plancherel.hpp"
#include "tfbound/transform_pairs.hpp"

using namespace tfb;

namespace {
bool rel_close(double v, double ref, double tol) {
  return std::fabs(v - ref) <= tol * std::fabs(ref);
}
}  // namespace

TEST_CASE("density point values") {
  CHECK(rel_close(density(2, 1.0), oracle::phi2_at_1, 1e-12));
  CHECK(rel_close(density(3, 2.0), oracle::phi3_at_2, 1e-12));
  CHECK(rel_close(density(4, 1.0), oracle::phi4_at_1, 1e-12));
  CHECK(rel_close(density(5, 1.5), oracle::phi5_at_1_5, 1e-12));
  CHECK(rel_close(density(6, 0.7), oracle::phi6_at_0_7, 1e-12));
}

TEST_CASE("density structure and domain") {
  for (int n = 2; n <= 7; ++n) {
    CHECK(density(n, 0.0) == 0.0);
    CHECK(density(n, 1e-3) > 0.0);
    CHECK_THROWS_AS(density(n, -0.25), domain_error);
    CHECK(plancherel_parts(n).has_tanh == (n % 2 == 0));
  }
  CHECK_THROWS_AS(density(1, 1.0), domain_error);
  CHECK_THROWS_AS(plancherel_parts(0), domain_error);
}

TEST_CASE("density vanishes quadratically at r = 0") {
  // Phi_n(r)/r^2 tends to a positive limit for every n (even n: the tanh
  // supplies one power of r; odd n: the k = 0 factor is r^2).
  for (int n = 2; n <= 7; ++n) {
    const double r = 1e-6;
    const double q1 = density(n, r) / (r * r);
    const double q2 = density(n, 2.0 * r) / (4.0 * r * r);
    CHECK(q1 > 0.0);
    CHECK(rel_close(q2, q1, 1e-9));
  }
}

TEST_CASE("spectral integrals against frozen references") {
  auto I = [](int n, double eps) {
    return spectral_integral(n, make_bump_pair(n, eps));
  };
  const double s2 = 2.0 * std::asinh(1.0);
  CHECK(rel_close(I(2, s2).value, oracle::I2_eps_2asinh1, 2e-8));
  CHECK(rel_close(I(2, 1.0).value, oracle::I2_eps_1, 2e-8));
  CHECK(rel_close(I(2, 0.5).value, oracle::I2_eps_0_5, 2e-8));
  CHECK(rel_close(I(3, 0.5).value, oracle::I3_eps_0_5, 2e-8));
  CHECK(rel_close(I(3, 1.0).value, oracle::I3_eps_1, 2e-8));
  CHECK(rel_close(I(4, 0.8).value, oracle::I4_eps_0_8, 2e-8));
  CHECK(rel_close(I(5, 0.6).value, oracle::I5_eps_0_6, 2e-8));
}

TEST_CASE("spectral integral is stable for extreme bump widths") {
  // eps = 4^-5: the transform amplitude (2a)^m underflows no intermediate
  const double eps = std::pow(4.0, -5.0);
  const QuadResult r = spectral_integral(2, make_bump_pair(2, eps));
  CHECK(rel_close(r.value, oracle::I2_eps_4pow_m5, 2e-8));
  CHECK(r.error <= 1e-6 * r.value);
}

TEST_CASE("analytic-tail engine agrees with brute-force quadrature") {
  const BumpPair p = make_bump_pair(2, 1.0);
  QuadOptions qo;
  qo.rel_tol = 1e-9;
  qo.initial_panel_width = 3.0;
  qo.max_panels = 400000;
  const QuadResult direct = integrate_adaptive(
      [&](double r) { return eval_h_real(p, r) * density(2, r); }, 0.0, 2e4,
      qo);
  const QuadResult fast = spectral_integral(2, p);
  // truncation at 2e4 leaves < 3e-9 absolute in the tail
  CHECK(std::fabs(direct.value - fast.value) <= 1e-7 * fast.value);
}

TEST_CASE("envelope-driven fallback") {
  // h = e^{-r}: product with Phi_2 is bounded by e^{-r/2} for all r >= 0
  TailEnvelope env;
  env.kind = TailEnvelope::Kind::exponential;
  env.c = 1.0;
  env.p = 0.5;
  env.t_min = 0.0;
  QuadOptions qo;
  qo.rel_tol = 1e-9;
  const QuadResult got = spectral_integral_envelope(
      2, [](double r) { return std::exp(-r); }, env, qo);
  QuadOptions ref_opts;
  ref_opts.rel_tol = 1e-11;
  const QuadResult ref = integrate_adaptive(
      [](double r) { return std::exp(-r) * density(2, r); }, 0.0, 80.0,
      ref_opts);
  CHECK(rel_close(got.value, ref.value, 1e-7));
}

TEST_CASE("normalized weighted sinc integral input validation") {
  CHECK_THROWS_AS(weighted_sinc_integral_normalized(3, 0.25, {0.0, 1.0}, M_PI),
                  domain_error);  // odd order
  CHECK_THROWS_AS(weighted_sinc_integral_normalized(4, -0.1, {0.0, 1.0}, M_PI),
                  domain_error);
  CHECK_THROWS_AS(weighted_sinc_integral_normalized(4, 0.25, {1.0, 0.0, 1.0, 1.0}, 0.0),
                  domain_error);  // q = m - j < 2 for j = 3
}
