// Acceptance gate: eight end-to-end checks, one PASS/FAIL line each.
// Usage: acceptance [--criterion k]   (default: run all eight)
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "tfbound/bounds.hpp"
#include "tfbound/config.hpp"
#include "tfbound/fuchsian.hpp"
#include "tfbound/numerics.hpp"
#include "tfbound/transform_pairs.hpp"
#include "tfbound/verify.hpp"

using namespace tfb;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Config load_config() { return Config::load(TFBOUND_CONFIG_PATH); }

// 1: the sharpened surface constant and its universal form
Result crit1() {
  const double eps = 2.0 * std::asinh(1.0);
  const BoundReport r = surface_kiss_constants(eps, 1e-9);
  const double cp = r.get("C_prime_tanh_pi_r");
  const double u = r.get("U_tanh_pi_r");
  const double cp_alt = r.get("C_prime_tanh_r");
  const bool ok = std::fabs(cp - 10.1391) <= 5e-4 && std::fabs(u - 63.71) <= 1e-2;
  Result res;
  res.pass = ok;
  res.detail = fmt(
      "C' = %.7f (ref 10.1391 +- 5e-4), U = %.5f (ref 63.71 +- 0.01); "
      "r-weight variant gives %.7f and is reported alongside",
      cp, u, cp_alt);
  return res;
}

// 2: g(0) against a grid self-convolution and the closed form
double conv4_at_zero(int M, double a) {
  const double h = a / M;
  const int N = 2 * M;  // B2 lives on [-2a, 2a]
  std::vector<double> b2(size_t(N) + 1, 0.0);
  for (int j = 0; j <= N; ++j) {
    double s = 0.0;
    for (int k = -M; k <= M; ++k) {
      const int l = j - k;
      if (l < -M || l > M) continue;
      const double f1 = (k == M || k == -M) ? 0.5 : 1.0;
      const double f2 = (l == M || l == -M) ? 0.5 : 1.0;
      s += f1 * f2;
    }
    b2[size_t(j)] = h * s;  // trapezoid samples of (indicator * indicator)(jh)
  }
  double s = b2[0] * b2[0];
  for (int j = 1; j < N; ++j) s += 2.0 * b2[size_t(j)] * b2[size_t(j)];
  return h * s;  // trapezoid for integral of B2^2 = B4(0)
}

Result crit2() {
  const double as = std::asinh(1.0);
  const double a = as / 2.0;
  const double ref = bspline_eval(4, a, 0.0);
  const double v1 = conv4_at_zero(1024, a);
  const double v2 = conv4_at_zero(2048, a);
  const double conv = (4.0 * v2 - v1) / 3.0;  // kills the h^2 trapezoid term
  const double closed = 2.0 * as * as * as / 3.0;
  const double lhs = 2.0 * 16.0 / ref;
  const double rhs = 48.0 / (as * as * as);
  const double d_conv = std::fabs(ref - conv);
  const double d_closed = std::fabs(ref - closed);
  const double d_pref = std::fabs(lhs - rhs) / rhs;
  Result res;
  res.pass = d_conv <= 1e-8 && d_closed <= 1e-10 && d_pref <= 1e-12;
  res.detail =
      fmt("g(0) = %.15f; |ref - conv| = %.2e (<= 1e-8), |ref - closed| = %.2e "
          "(<= 1e-10), prefactor 32/g(0) vs 48/asinh(1)^3 off by %.2e rel "
          "(<= 1e-12)",
          ref, d_conv, d_closed, d_pref);
  return res;
}

Result crit3() {
  const Config cfg = load_config();
  VerifyOptions o;
  const SuiteResult r = run_suite("fourier", cfg, o);
  double worst_pair = 0.0, worst_comp = 0.0;
  for (const auto& p : r.detail.at("pairs"))
    worst_pair = std::max(
        worst_pair, p.at("report").at("max_abs_dev").get<double>());
  for (const auto& c : r.detail.at("composite"))
    worst_comp = std::max(worst_comp, c.at("max_abs_dev").get<double>());
  Result res;
  res.pass = r.pass;
  res.detail = fmt("canonical pairs n in {2,3,4,5}, 100 random frequencies "
                   "each: worst |transform - h| = %.2e (tol 1e-8); composite "
                   "kernels: worst deviation %.2e against scaled 1e-7",
                   worst_pair, worst_comp);
  if (!r.pass) res.detail += " " + r.detail.dump();
  return res;
}

Result crit4() {
  const Config cfg = load_config();
  VerifyOptions o;
  const SuiteResult r = run_suite("signs", cfg, o);
  Result res;
  res.pass = r.pass;
  res.detail = fmt("sign facts on 1e4-point segment grids with refinement "
                   "near zeros: %s violations",
                   r.pass ? "no" : "FOUND");
  if (!r.pass) res.detail += " " + r.detail.dump();
  return res;
}

Result crit5() {
  const Config cfg = load_config();
  VerifyOptions o;
  o.trials = 10000;
  const SuiteResult r = run_suite("holonomy", cfg, o);
  Result res;
  res.pass = r.pass;
  res.detail = "1e4 random holonomies per n in {2..7} inside the two-sided "
               "determinant bound; n = 2 closed form to 1e-12";
  if (!r.pass) res.detail += " " + r.detail.dump();
  return res;
}

Result crit6() {
  const Config cfg = load_config();
  const GroupConfig* gc = cfg.find_group("bolza");
  if (!gc) return {false, "group bolza not configured"};
  const FuchsianGroup g = load_group(*gc);
  SpectrumOptions o;
  o.limits = cfg.limits;
  const Spectrum s11 = length_spectrum(g, 8.0, 11, o);
  const Spectrum s12 = length_spectrum(g, 8.0, 12, o);
  const double drift = std::fabs(s11.systole - s12.systole);
  const bool sys_ok = std::fabs(s12.systole - 3.05714) <= 1e-5 && drift <= 1e-9;
  bool val_ok = false;
  std::string val_note;
  try {
    const ojson v = validate_bounds(s12, cfg.external(), 0.5,
                                    {4.0, 5.0, 6.0, 7.0, 8.0});
    val_ok = v.at("pass").get<bool>();
    if (!val_ok) val_note = " validation: " + v.dump();
  } catch (const std::exception& e) {
    val_note = std::string(" validation threw: ") + e.what();
  }
  Result res;
  res.pass = sys_ok && s12.kiss == 24 && s12.complete() && val_ok;
  res.detail = fmt("systole %.6f at depths 11/12 (drift %.1e), kiss %ld, "
                   "completeness certified: %s; counts vs kissing and "
                   "cumulative bounds at L in {4..8}, delta = 0.5: %s%s",
                   s12.systole, drift, s12.kiss, s12.complete() ? "yes" : "NO",
                   val_ok ? "all hold" : "VIOLATION", val_note.c_str());
  return res;
}

Result crit7() {
  const Config cfg = load_config();
  const SuiteResult r = run_suite("li", cfg, {});
  int ok_complete = 0, ok_offset = 0, total = 0;
  for (const auto& p : r.detail.at("points")) {
    ++total;
    ok_complete += p.at("sandwich").get<bool>();
    ok_offset += p.at("sandwich_from_2").get<bool>();
  }
  const bool chain_ok = r.detail.at("chain_form_pass").get<bool>();
  Result res;
  res.pass = r.pass;
  res.detail = fmt(
      "strict sandwich holds at %d/%d points (principal-value convention) and "
      "%d/%d (offset convention): the upper estimate is asymptotic and fails "
      "for x in roughly (5e1, 5e4); the weaker forms the counting chains "
      "consume hold at every checked point: %s",
      ok_complete, total, ok_offset, total, chain_ok ? "yes" : "NO");
  return res;
}

// 8: tolerance tightened 10x moves no reported constant past its error bar
int check_stability(const BoundReport& loose, const BoundReport& tight,
                    std::string* worst) {
  int bad = 0;
  for (const ConstantEntry& c : loose.constants) {
    double tv = c.value;
    bool found = false;
    for (const ConstantEntry& t : tight.constants)
      if (t.name == c.name) {
        tv = t.value;
        found = true;
        break;
      }
    if (!found) continue;
    const double delta = std::fabs(tv - c.value);
    const double bar = std::max(c.error, 1e-18);
    if (delta > bar) {
      ++bad;
      *worst += fmt(" %s: |delta| %.2e > bar %.2e;", c.name.c_str(), delta, bar);
    }
  }
  return bad;
}

Result crit8() {
  const Config cfg = load_config();
  const double eps = 2.0 * std::asinh(1.0);
  std::string worst;
  int bad = 0;
  bad += check_stability(constant_A(2, 1e-6), constant_A(2, 1e-7), &worst);
  bad += check_stability(surface_kiss_constants(eps, 1e-6),
                         surface_kiss_constants(eps, 1e-7), &worst);
  bad += check_stability(delta_constants(2, 0.5, cfg.external(), 1e-6),
                         delta_constants(2, 0.5, cfg.external(), 1e-7), &worst);
  Result res;
  res.pass = bad == 0;
  res.detail = bad == 0
                   ? "A_2, surface constants, and the delta chain all move "
                     "less than their error bars under a 10x tighter tolerance"
                   : fmt("%d constant(s) drifted past their error bars:%s", bad,
                         worst.c_str());
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  struct Crit {
    std::function<Result()> run;
    double limit_s;  // 0 = no stated budget
  };
  const std::vector<Crit> crits = {
      {crit1, 5.0}, {crit2, 0.0}, {crit3, 60.0}, {crit4, 0.0},
      {crit5, 0.0}, {crit6, 300.0}, {crit7, 0.0}, {crit8, 0.0},
  };
  bool all = true;
  for (int k = 1; k <= int(crits.size()); ++k) {
    if (only != 0 && only != k) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = crits[size_t(k - 1)].run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const double lim = crits[size_t(k - 1)].limit_s;
    if (lim > 0.0) {
      if (dt >= lim) r.pass = false;
      r.detail += fmt(" [%.1fs, budget %.0fs]", dt, lim);
    }
    std::printf("CRITERION %d: %s - %s\n", k, r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
