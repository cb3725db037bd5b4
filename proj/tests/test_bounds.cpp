#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "oracle_values.hpp"
#include "tfbound/bounds.hpp"
#include "tfbound/errors.hpp"

using namespace tfb;

namespace {
bool rel_close(double v, double ref, double tol) {
  return std::fabs(v - ref) <= tol * std::fabs(ref);
}

ExternalConstants surface_ext() {
  ExternalConstants ext;
  ext.W[2] = 0.15915494309189535;  // 1/(2 pi)
  return ext;
}
}  // namespace

TEST_CASE("asymptotic count") {
  CHECK(rel_close(pgt_asymptotic(3, 1.0), std::exp(2.0) / 2.0, 1e-15));
  CHECK(rel_close(pgt_asymptotic(2, std::log(4.0)), 4.0 / std::log(4.0), 1e-15));
  CHECK_THROWS_AS(pgt_asymptotic(1, 1.0), domain_error);
  CHECK_THROWS_AS(pgt_asymptotic(2, 0.0), domain_error);
}

TEST_CASE("dimensional constant A") {
  const BoundReport r2 = constant_A(2);
  CHECK(rel_close(r2.get("A_n"), oracle::A_2, 1e-7));
  CHECK(r2.get("eps_n") == std::pow(4.0, -5.0));

  // n = 3 closed form: the spectral integral collapses to 2a/pi, so
  // A_3 = 24 (1 + e^eps) / (pi (2a)^2) with eps = 4^-6, a = eps/4
  const BoundReport r3 = constant_A(3);
  const double eps = std::pow(4.0, -6.0);
  const double two_a = 0.5 * eps;
  const double closed = 24.0 * (1.0 + std::exp(eps)) / (M_PI * two_a * two_a);
  CHECK(rel_close(r3.get("A_n"), closed, 1e-6));

  CHECK_THROWS_AS(constant_A(1), domain_error);
}

TEST_CASE("sharpened surface constant, both saturation variants") {
  const double s2 = 2.0 * std::asinh(1.0);
  const BoundReport rep = surface_kiss_constants(s2);
  CHECK(rel_close(rep.get("C_prime_tanh_pi_r"), oracle::Cprime_tanh_pi, 1e-8));
  CHECK(rel_close(rep.get("C_prime_tanh_r"), oracle::Cprime_tanh_r, 1e-8));
  CHECK(rel_close(rep.get("U_tanh_pi_r"), oracle::U_tanh_pi, 1e-8));
  CHECK(std::fabs(rep.get("C_prime_tanh_pi_r") - 10.1391) < 5e-4);
  CHECK(std::fabs(rep.get("U_tanh_pi_r") - 63.71) < 0.01);

  REQUIRE(rep.branches.size() == 2);
  CHECK(rep.branches[0].at("matches_reference_10_1391").get<bool>());
  CHECK_FALSE(rep.branches[1].at("matches_reference_10_1391").get<bool>());
  CHECK_FALSE(rep.notes.empty());  // the variant discrepancy is called out
}

TEST_CASE("kissing bound branch selection") {
  const ExternalConstants ext = surface_ext();

  ManifoldParams p;
  p.n = 2;
  p.vol = 4.0 * M_PI;
  p.sys = 1.0;  // below 2 asinh 1: thin branch applies and wins
  BoundReport rep = kiss_upper_bound(p, ext);
  CHECK(rep.bound == doctest::Approx(6.0).epsilon(1e-14));

  p.sys = oracle::bolza_systole;  // thin branch not applicable
  rep = kiss_upper_bound(p, ext);
  const double main =
      rep.get("A_n") * p.vol * std::exp(0.5 * p.sys) / p.sys;
  CHECK(rel_close(rep.bound, main, 1e-13));
  bool found_inapplicable = false;
  for (const auto& b : rep.branches)
    if (b.at("name") == "thin_collar" && !b.at("applicable").get<bool>())
      found_inapplicable = true;
  CHECK(found_inapplicable);
}

TEST_CASE("kissing bound in higher dimension uses K[n] when present") {
  ManifoldParams p;
  p.n = 3;
  p.vol = 1.0;
  p.sys = 1e-4;  // below 4^-(n+2) = 4^-5

  ExternalConstants ext;  // no K: thin branch reported unavailable
  BoundReport rep = kiss_upper_bound(p, ext);
  bool skipped = false;
  for (const auto& b : rep.branches)
    if (b.at("name") == "thin_collar" && b.contains("available") &&
        !b.at("available").get<bool>())
      skipped = true;
  CHECK(skipped);
  const double main = rep.get("A_n") * p.vol * std::exp(1.0 * p.sys) / p.sys;
  CHECK(rel_close(rep.bound, main, 1e-13));

  ext.K[3] = 0.1;
  rep = kiss_upper_bound(p, ext);
  CHECK(rep.bound == doctest::Approx(20.0).epsilon(1e-13));  // 2/K * vol
}

TEST_CASE("systole-free volume bound") {
  const ExternalConstants ext = surface_ext();
  const BoundReport rep = volume_kiss_bound(2, 100.0, ext);
  CHECK(rel_close(rep.bound,
                  rep.get("A_n_systole_free") * 100.0 * 100.0 /
                      std::log1p(100.0),
                  1e-12));
  CHECK(rep.get("a_n") <= 1.0);
  CHECK(rep.get("d_n") <= rep.get("v_n"));
  CHECK(rep.get("b_n") > 0.0);

  CHECK_THROWS_AS(volume_kiss_bound(2, 10.0, ext), domain_error);

  bool config_threw = false;
  try {
    volume_kiss_bound(3, 100.0, ext);
  } catch (const config_error& e) {
    config_threw = true;
    CHECK(std::string(e.what()).find("v[3]") != std::string::npos);
  }
  CHECK(config_threw);
}

TEST_CASE("counting-chain constants at delta = 0.5") {
  const ExternalConstants ext = surface_ext();
  const BoundReport rep = delta_constants(2, 0.5, ext);
  CHECK(rel_close(rep.get("B"), oracle::B_n2_d05, 1e-7));
  CHECK(rel_close(rep.get("C"), oracle::C_n2_d05, 1e-7));
  // B' = B (cover/((n-1) e) + phi3/delta), phi3(n=2) = 5/3
  const double bp_expect =
      oracle::B_n2_d05 *
      (oracle::cover_sum_n2_d05 / std::exp(1.0) + (5.0 / 3.0) / 0.5);
  CHECK(rel_close(rep.get("B_prime"), bp_expect, 1e-7));
  // D = P I_narrow + 4 e^{nu delta} B'
  const double d_expect = oracle::PI_narrow_n2_d05 +
                          4.0 * std::exp(0.25) * rep.get("B_prime");
  CHECK(rel_close(rep.get("D"), d_expect, 1e-6));
  // C' = C / (2 delta (n-1)) = C at delta = 1/2, n = 2
  CHECK(rel_close(rep.get("C_prime"), rep.get("C"), 1e-14));
  CHECK(rep.get("D_prime") > rep.get("D"));

  bool threw = false;
  try {
    delta_constants(2, 0.5, ExternalConstants{});
  } catch (const config_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("W[2]") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("count bounds are consistent with the delta constants") {
  const ExternalConstants ext = surface_ext();
  const double vol = 4.0 * M_PI;
  const BoundReport dc = delta_constants(2, 0.5, ext);

  const BoundReport iu = interval_count_upper(2, 0.5, vol, 6.0, ext);
  CHECK(rel_close(iu.bound, dc.get("B") * vol * std::exp(6.0) / 6.0, 1e-10));

  const BoundReport il6 = interval_count_lower(2, 0.5, vol, 6.0, ext);
  CHECK(il6.vacuous);

  const BoundReport il40 = interval_count_lower(2, 0.5, vol, 40.0, ext);
  CHECK_FALSE(il40.vacuous);
  CHECK(il40.bound > 0.0);
  CHECK(rel_close(il40.bound,
                  (dc.get("C") * std::exp(40.0) -
                   dc.get("D") * vol * std::exp(20.0)) /
                      40.0,
                  1e-10));
  CHECK_THROWS_AS(interval_count_lower(2, 0.5, vol, 0.25, ext), domain_error);

  const BoundReport cu = cumulative_upper(2, 0.5, vol, 6.0, ext);
  CHECK(rel_close(cu.bound, dc.get("B_prime") * vol * std::exp(6.0) / 6.0,
                  1e-10));

  const BoundReport cl30 = cumulative_lower(2, 0.5, vol, 30.0, ext);
  CHECK(cl30.vacuous);
  const BoundReport cl40 = cumulative_lower(2, 0.5, vol, 40.0, ext);
  CHECK_FALSE(cl40.vacuous);
  CHECK(rel_close(cl40.bound,
                  (dc.get("C_prime") * std::exp(40.0) -
                   dc.get("D_prime") * vol * std::exp(20.0)) /
                      40.0,
                  1e-10));
  const double crossover =
      std::log(dc.get("D_prime") * vol / dc.get("C_prime")) / 0.5;
  CHECK(rel_close(cl40.get("positivity_crossover_L"), crossover, 1e-10));
  CHECK(crossover > 29.0);
  CHECK(crossover < 33.0);

  CHECK_THROWS_AS(cumulative_lower(2, 0.5, 10.0, 40.0, ext), domain_error);
}
