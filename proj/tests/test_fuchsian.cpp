#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "tfbound/config.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/fuchsian.hpp"

using namespace tfb;

namespace {

Config test_config() { return Config::load(TFBOUND_CONFIG_PATH); }

FuchsianGroup bolza() {
  const Config c = test_config();
  const GroupConfig* gc = c.find_group("bolza");
  REQUIRE(gc != nullptr);
  return load_group(*gc);
}

bool rel_close(double v, double ref, double tol) {
  return std::fabs(v - ref) <= tol * std::fabs(ref);
}

}  // namespace

TEST_CASE("group loading and validation") {
  const Config c = test_config();
  CHECK(c.find_group("missing") == nullptr);
  const FuchsianGroup g = bolza();
  CHECK(g.gen.size() == 4);
  CHECK(rel_close(g.volume, oracle::bolza_volume, 1e-14));
  for (const Mat2& m : g.gen)
    CHECK(std::fabs(m.a * m.d - m.b * m.c - 1.0) <= 1e-14);

  GroupConfig bad;
  bad.label = "bad_det";
  bad.generators = {{2.0, 0.0, 0.0, 1.0}};  // det 2
  CHECK_THROWS_AS(load_group(bad), config_error);

  GroupConfig ell;
  ell.label = "elliptic";
  ell.generators = {
      {std::cos(0.5), -std::sin(0.5), std::sin(0.5), std::cos(0.5)}};
  CHECK_THROWS_AS(load_group(ell), config_error);

  GroupConfig par;
  par.label = "parabolic_only";
  par.generators = {{1.0, 1.0, 0.0, 1.0}};
  CHECK_THROWS_AS(load_group(par), config_error);

  GroupConfig rel = *c.find_group("bolza");
  rel.relation = {1, 2};  // g1 g2 is nowhere near +-I
  CHECK_THROWS_AS(load_group(rel), config_error);
}

TEST_CASE("closure enumeration is exact at small depth") {
  const Ball b = enumerate_closure(bolza(), 4, 13.0, 4000000);
  REQUIRE(b.level_sizes.size() == 4);
  CHECK(b.level_sizes[0] == 8);
  CHECK(b.level_sizes[1] == 56);
  CHECK(b.level_sizes[2] == 392);
  CHECK(b.level_sizes[3] == 2736);
  CHECK_FALSE(b.closed);
  CHECK_FALSE(b.cap_hit);

  // dedup index: exact, sign-normalized lookups
  CHECK(b.find(Mat2{}) == 0);
  const Mat2& m = b.elems[17].m;
  CHECK(b.find(m) == 17);
  CHECK(b.find(Mat2{-m.a, -m.b, -m.c, -m.d}) == 17);
}

TEST_CASE("ball summary filters by trace") {
  EnumerationLimits lim;
  const BallSummary s = enumerate_ball(bolza(), 3, 2.0 * std::cosh(1.6), lim);
  CHECK(s.closure_elements > s.elements);
  CHECK(s.elements >= 8);  // the eight shortest-word elements pass the cap
  CHECK_FALSE(s.closed);
  const ojson j = s.to_json();
  CHECK(j.contains("level_sizes"));
}

TEST_CASE("torsion and parabolic guards") {
  // two hyperbolic generators whose product is a rotation by 0.3
  const double c = std::cos(0.3), s = std::sin(0.3);
  GroupConfig tor;
  tor.label = "torsion";
  tor.generators = {{2.0, 0.0, 0.0, 0.5},
                    {0.5 * c, -0.5 * s, 2.0 * s, 2.0 * c}};
  const FuchsianGroup g = load_group(tor);  // generators individually fine
  bool threw = false;
  try {
    length_spectrum(g, 2.0, 3);
  } catch (const domain_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("elliptic") != std::string::npos);
  }
  CHECK(threw);

  // product exactly parabolic: [[1,1],[0,1]]
  GroupConfig par;
  par.label = "parabolic_product";
  par.generators = {{2.0, 0.0, 0.0, 0.5}, {0.5, 0.5, 0.0, 2.0}};
  const FuchsianGroup g2 = load_group(par);
  CHECK_THROWS_AS(length_spectrum(g2, 2.0, 3), domain_error);
}

TEST_CASE("Bolza length spectrum") {
  const Config c = test_config();
  SpectrumOptions opts;
  opts.limits = c.limits;
  const Spectrum s = length_spectrum(bolza(), 6.2, 11, opts);

  CHECK(rel_close(s.systole, oracle::bolza_systole, 1e-9));
  CHECK(s.kiss == oracle::bolza_kiss);
  CHECK(s.complete());
  CHECK(s.horizon == 6.2);
  CHECK(s.uncertain_classes == 0);
  CHECK(s.fallback_merges == 0);
  CHECK(s.trace_cap > 2.0 * std::cosh(3.1));

  REQUIRE(!s.classes.empty());
  for (size_t i = 0; i < s.classes.size(); ++i) {
    const ConjClass& cc = s.classes[i];
    CHECK(cc.length >= s.systole - 1e-9);
    CHECK(cc.length <= 6.2 + 1e-6);
    if (i > 0) CHECK(cc.length >= s.classes[i - 1].length - 1e-12);
    CHECK_FALSE(cc.word.empty());
    // inverse pairing is a length-preserving involution
    REQUIRE(cc.inverse_class >= 0);
    REQUIRE(cc.inverse_class < int(s.classes.size()));
    const ConjClass& inv = s.classes[size_t(cc.inverse_class)];
    CHECK(inv.inverse_class == int(i));
    CHECK(std::fabs(inv.length - cc.length) <= 1e-9);
    CHECK(inv.primitive == cc.primitive);
    // nothing shorter than twice the systole can be a proper power
    if (cc.length < 2.0 * s.systole - 1e-6) CHECK(cc.primitive);
  }

  // squares of systolic classes appear as non-primitive classes
  bool found_square = false;
  for (const ConjClass& cc : s.classes) {
    if (!cc.primitive && std::fabs(cc.length - 2.0 * s.systole) <= 1e-6) {
      CHECK(cc.power == 2);
      REQUIRE(cc.root_class >= 0);
      CHECK(std::fabs(s.classes[size_t(cc.root_class)].length - s.systole) <=
            1e-9);
      found_square = true;
    }
  }
  CHECK(found_square);

  // counts
  CHECK(empirical_count(s, s.systole - 0.01, s.systole + 0.01, true) == 24);
  CHECK(empirical_count(s, 0.0, 6.2, false) == long(s.classes.size()));
  CHECK(empirical_count(s, 0.0, 6.2, true) <
        long(s.classes.size()));  // the squares are in there
  CHECK_THROWS_AS(empirical_count(s, 0.0, 7.0, true), incomplete_error);

  // aggregated entries cover every certain class exactly once
  long total = 0;
  for (const SpectrumEntry& e : s.entries) total += e.multiplicity;
  CHECK(total == long(s.classes.size()));
  REQUIRE(!s.entries.empty());
  CHECK(rel_close(s.entries.front().length, s.systole, 1e-9));
  CHECK(s.entries.front().multiplicity == 24);
  CHECK(s.entries.front().primitive);

  // CSV export
  const std::string csv = spectrum_csv(s);
  CHECK(csv.rfind("length,multiplicity,primitive,word\n", 0) == 0);
  CHECK(csv.find(",24,1,") != std::string::npos);

  const ojson summary = spectrum_summary(s);
  CHECK(summary.at("completeness") != "incomplete");
  CHECK(summary.at("kiss").get<long>() == 24);
  const ojson full = spectrum_json(s);
  CHECK(full.at("spectrum").size() == s.entries.size());
}

TEST_CASE("inverse merging halves the oriented multiplicities") {
  const Config c = test_config();
  SpectrumOptions opts;
  opts.limits = c.limits;
  opts.merge_inverses = true;
  const Spectrum s = length_spectrum(bolza(), 4.0, 9, opts);
  CHECK(s.kiss == 24);  // class data stays oriented
  REQUIRE(!s.entries.empty());
  CHECK(s.entries.front().multiplicity == 12);
  CHECK(empirical_count(s, 0.0, 4.0, true) == 24);  // counts are class-based
}

TEST_CASE("bound validation on enumerated counts") {
  const Config c = test_config();
  SpectrumOptions opts;
  opts.limits = c.limits;
  const Spectrum s = length_spectrum(bolza(), 6.2, 11, opts);
  const ojson v = validate_bounds(s, c.external(), 0.5, {4.0, 5.0, 6.0});
  CHECK(v.at("pass").get<bool>());
  REQUIRE(v.at("checks").size() == 4);  // kiss + three lengths
  CHECK(v.at("checks")[0].at("name") == "kiss_vs_upper_bound");
  CHECK(v.at("checks")[0].at("pass").get<bool>());

  // validation refuses volume-less or uncertified input
  Spectrum nocopy = s;
  nocopy.volume = 0.0;
  CHECK_THROWS_AS(validate_bounds(nocopy, c.external(), 0.5, {4.0}),
                  config_error);
  Spectrum inc = s;
  inc.completeness = Completeness::incomplete;
  CHECK_THROWS_AS(validate_bounds(inc, c.external(), 0.5, {4.0}),
                  incomplete_error);
}
