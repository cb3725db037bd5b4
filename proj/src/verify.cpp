#include "tfbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tfbound/bounds.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/fuchsian.hpp"
#include "tfbound/geometry.hpp"
#include "tfbound/numerics.hpp"
#include "tfbound/trace_kernels.hpp"
#include "tfbound/transform_pairs.hpp"

namespace tfb {

namespace {

std::vector<double> seeded_uniform(std::uint64_t seed, int count, double lo,
                                   double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<size_t>(count));
  for (double& x : v) x = dist(rng);
  return v;
}

SuiteResult suite_admissibility() {
  static const std::pair<int, double> cases[] = {
      {2, 1.0}, {2, 2.0 * std::asinh(1.0)}, {3, 0.2},
      {3, 1.0}, {4, 0.8},                   {5, 0.5}};
  SuiteResult res;
  res.name = "admissibility";
  res.pass = true;
  ojson arr = ojson::array();
  for (const auto& [n, eps] : cases) {
    const BumpPair p = make_bump_pair(n, eps);
    const AdmissibilityReport rep = verify_admissibility(p);
    ojson j;
    j["n"] = n;
    j["epsilon"] = num(eps);
    j["m"] = p.m;
    j["report"] = rep.to_json();
    arr.push_back(j);
    res.pass = res.pass && rep.pass;
  }
  res.detail["cases"] = arr;
  return res;
}

// quadrature cosine transform of a composite kernel G, for the duality check
double transform_of_G(const KernelFamily& f, double xi, double scale) {
  const double x_max = f.shift + f.base.epsilon;
  QuadOptions qo;
  qo.rel_tol = 1e-10;
  qo.abs_tol = 1e-11 * scale;
  qo.initial_panel_width =
      std::min(2.0 * f.base.a, M_PI / (2.0 * std::fabs(xi) + 1e-12));
  const QuadResult r = integrate_adaptive(
      [&](double x) { return eval_G(f, x) * std::cos(xi * x); }, 0.0, x_max,
      qo);
  return 2.0 * r.value;
}

SuiteResult suite_fourier(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "fourier";
  res.pass = true;

  static const std::pair<int, double> pairs[] = {
      {2, 1.0}, {3, 1.0}, {4, 0.8}, {5, 0.5}};
  ojson parr = ojson::array();
  for (const auto& [n, eps] : pairs) {
    const BumpPair p = make_bump_pair(n, eps);
    const std::vector<double> xis =
        seeded_uniform(opts.seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(n)),
                       100, -50.0, 50.0);
    const FourierReport rep = fourier_check(p, xis, 1e-8);
    ojson j;
    j["n"] = n;
    j["epsilon"] = num(eps);
    j["report"] = rep.to_json();
    parr.push_back(j);
    res.pass = res.pass && rep.pass;
  }
  res.detail["pairs"] = parr;

  // composite duality: quadrature transform of G against the closed form H
  struct CompositeCase {
    KernelKind kind;
    int n;
    double eps, shift;
  };
  static const CompositeCase comps[] = {
      {KernelKind::kiss_shift, 2, 1.0, 3.0},
      {KernelKind::cos_minus_one, 2, 1.0, 3.0},
      {KernelKind::one_plus_cos, 2, 1.0, 3.0},
      {KernelKind::kiss_shift, 3, 0.5, 2.0},
      {KernelKind::cos_minus_one, 3, 0.5, 2.0},
      {KernelKind::one_plus_cos, 3, 0.5, 2.0}};
  ojson carr = ojson::array();
  for (const CompositeCase& cc : comps) {
    const BumpPair p = make_bump_pair(cc.n, cc.eps);
    const KernelFamily f = make_kernel(cc.kind, p, cc.shift);
    const double E = std::exp(p.nu * p.epsilon);
    const double scale =
        (cc.kind == KernelKind::kiss_shift ? 2.0 * (1.0 + E) : 2.0) * p.h0;
    const std::vector<double> xis = seeded_uniform(
        opts.seed ^ (0xc2b2ae3d27d4eb4fULL * std::uint64_t(int(cc.kind) + 1) +
                     std::uint64_t(cc.n)),
        50, -30.0, 30.0);
    double max_dev = 0.0, worst_xi = 0.0;
    for (double xi : xis) {
      const double T = transform_of_G(f, xi, scale);
      const double H = eval_H(f, std::complex<double>(xi, 0.0)).real();
      const double dev = std::fabs(T - H);
      if (dev > max_dev) {
        max_dev = dev;
        worst_xi = xi;
      }
    }
    const double tol = 1e-7 * scale;
    const bool ok = max_dev <= tol;
    ojson j;
    j["kind"] = kernel_kind_name(cc.kind);
    j["n"] = cc.n;
    j["epsilon"] = num(cc.eps);
    j["shift"] = num(cc.shift);
    j["max_abs_dev"] = num(max_dev);
    j["tol"] = num(tol);
    j["count"] = int(xis.size());
    j["worst_xi"] = num(worst_xi);
    j["pass"] = ok;
    carr.push_back(j);
    res.pass = res.pass && ok;
  }
  res.detail["composite"] = carr;
  return res;
}

SuiteResult suite_signs() {
  struct SignCase {
    KernelKind kind;
    int n;
    double eps, shift;
  };
  const double sys2 = 2.0 * std::asinh(1.0);
  const SignCase cases[] = {
      {KernelKind::kiss_shift, 2, sys2, sys2},   // boundary: shift == epsilon
      {KernelKind::kiss_shift, 2, 1.0, 3.0571419338},
      {KernelKind::kiss_shift, 3, 0.5, 2.0},
      {KernelKind::cos_minus_one, 2, 1.0, 3.0},
      {KernelKind::cos_minus_one, 3, 0.5, 5.0},
      {KernelKind::one_plus_cos, 2, 1.0, 3.0},
      {KernelKind::one_plus_cos, 3, 0.5, 5.0}};
  SuiteResult res;
  res.name = "signs";
  res.pass = true;
  ojson arr = ojson::array();
  for (const SignCase& sc : cases) {
    const BumpPair p = make_bump_pair(sc.n, sc.eps);
    const KernelFamily f = make_kernel(sc.kind, p, sc.shift);
    const SignReport rep = verify_sign_conditions(f);
    ojson j;
    j["kind"] = kernel_kind_name(sc.kind);
    j["n"] = sc.n;
    j["epsilon"] = num(sc.eps);
    j["shift"] = num(sc.shift);
    j["report"] = rep.to_json();
    arr.push_back(j);
    res.pass = res.pass && rep.pass && !rep.precondition_violation;
  }
  res.detail["kernels"] = arr;
  return res;
}

SuiteResult suite_holonomy(const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "holonomy";
  res.pass = true;
  ojson arr = ojson::array();
  for (int n = 2; n <= 7; ++n) {
    const HolonomyReport rep =
        holonomy_bounds_check(n, opts.trials, opts.seed + std::uint64_t(n));
    arr.push_back(rep.to_json());
    res.pass = res.pass && rep.pass;
  }
  res.detail["dimensions"] = arr;

  // n = 2, trivial rotation: factor reduces to a closed form
  double max_rel = 0.0;
  for (double l : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    HolonomySample s;
    s.n = 2;
    s.length = l;
    s.rotation = Eigen::MatrixXd::Identity(1, 1);
    const double d = holonomy_factor(s);
    const double closed = surface_holonomy_identity(l);
    max_rel = std::max(max_rel, std::fabs(d - closed) / closed);
  }
  const bool id_ok = max_rel <= 1e-12;
  res.detail["surface_identity"] = {{"max_rel_dev", num(max_rel)},
                                    {"pass", id_ok}};
  res.pass = res.pass && id_ok;
  return res;
}

SuiteResult suite_li() {
  SuiteResult res;
  res.name = "li";
  static const double xs[] = {11.0, 1e2, 1e4, 1e6, 1e8};
  auto lower_bnd = [](double x) {
    const double l = std::log(x);
    return x / l + x / (l * l);
  };
  auto upper_bnd = [](double x) {
    const double l = std::log(x);
    return x / l + x / (l * l) + 3.0 * x / (l * l * l);
  };

  bool all_complete = true, all_offset = true;
  ojson pts = ojson::array();
  for (double x : xs) {
    const double li_c = log_integral_complete(x);
    const double li_o = log_integral(x);
    const double lo = lower_bnd(x), hi = upper_bnd(x);
    const bool ok_c = lo <= li_c && li_c <= hi;
    const bool ok_o = lo <= li_o && li_o <= hi;
    all_complete = all_complete && ok_c;
    all_offset = all_offset && ok_o;
    ojson j;
    j["x"] = num(x);
    j["lower"] = num(lo);
    j["upper"] = num(hi);
    j["li"] = num(li_c);
    j["li_from_2"] = num(li_o);
    j["sandwich"] = ok_c;
    j["sandwich_from_2"] = ok_o;
    pts.push_back(j);
  }
  res.detail["points"] = pts;

  // the forms the counting chains actually consume, convention-independent:
  // the lower estimate directly, and the upper estimate applied to
  // li(x) - li(b) with the base term dropped (li(b) >= li(e^3) = 9.93 of
  // headroom against the worst mid-range deficit 4.16)
  const double b = std::exp(3.0);
  const double li_b = log_integral_complete(b);
  bool all_diff = true;
  ojson diffs = ojson::array();
  for (double x : {1e4, 1e6, 1e8}) {
    const double d = log_integral_complete(x) - li_b;
    const bool ok_up = d <= upper_bnd(x);
    const bool ok_lo = log_integral_complete(x) >= lower_bnd(x);
    all_diff = all_diff && ok_up && ok_lo;
    ojson j;
    j["x"] = num(x);
    j["difference"] = num(d);
    j["upper_dropped_base"] = num(upper_bnd(x));
    j["upper_holds"] = ok_up;
    j["lower_holds"] = ok_lo;
    j["pass"] = ok_up && ok_lo;
    diffs.push_back(j);
  }
  res.detail["chain_form"] = diffs;
  res.detail["chain_form_pass"] = all_diff;
  res.detail["notes"] = ojson::array(
      {"the two-sided estimate is asymptotic: its upper bound fails for li on "
       "a mid range (roughly 5e1..5e4) under either convention; the counting "
       "chains survive because they use the lower estimate directly and the "
       "upper estimate only on li(x) - li(base) with the base term dropped, "
       "whose headroom exceeds the worst deficit"});
  res.pass = all_complete;  // strict sandwich, standard convention
  return res;
}

SuiteResult suite_bounds(const Config& cfg, const VerifyOptions& opts) {
  SuiteResult res;
  res.name = "bounds";
  const GroupConfig* gc = nullptr;
  if (!opts.group_label.empty()) {
    gc = cfg.find_group(opts.group_label);
    if (!gc) throw config_error("verify bounds: unknown group '" +
                                opts.group_label + "'");
  } else {
    if (cfg.groups.empty())
      throw config_error("verify bounds: no groups configured");
    gc = &cfg.groups.front();
  }
  const FuchsianGroup g = load_group(*gc);
  SpectrumOptions so;
  so.limits = cfg.limits;
  const Spectrum s = length_spectrum(g, opts.l_max, cfg.limits.depth, so);
  std::vector<double> Ls;
  for (int L = int(std::ceil(opts.l_max / 2.0)); L <= int(opts.l_max); ++L)
    Ls.push_back(double(L));
  if (Ls.empty()) Ls.push_back(opts.l_max);
  const ojson v = validate_bounds(s, cfg.external(), opts.delta, Ls, cfg.tol);
  res.detail["summary"] = spectrum_summary(s);
  res.detail["validation"] = v;
  res.pass = v.at("pass").get<bool>();
  return res;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"admissibility", "fourier", "signs", "holonomy", "li", "bounds"};
}

SuiteResult run_suite(const std::string& name, const Config& cfg,
                      const VerifyOptions& opts) {
  if (name == "admissibility") return suite_admissibility();
  if (name == "fourier") return suite_fourier(opts);
  if (name == "signs") return suite_signs();
  if (name == "holonomy") return suite_holonomy(opts);
  if (name == "li") return suite_li();
  if (name == "bounds") return suite_bounds(cfg, opts);
  throw config_error("unknown verification suite '" + name +
                     "' (expected one of: admissibility, fourier, signs, "
                     "holonomy, li, bounds, all)");
}

ojson run_suites(const std::vector<std::string>& names, const Config& cfg,
                 const VerifyOptions& opts, bool* all_pass) {
  std::vector<std::string> expanded;
  for (const std::string& n : names) {
    if (n == "all") {
      for (const std::string& s : suite_names()) expanded.push_back(s);
    } else {
      expanded.push_back(n);
    }
  }
  std::vector<std::string> unique;
  for (const std::string& n : expanded)
    if (std::find(unique.begin(), unique.end(), n) == unique.end())
      unique.push_back(n);

  bool pass = true;
  ojson suites = ojson::array();
  for (const std::string& n : unique) {
    SuiteResult r = run_suite(n, cfg, opts);
    ojson j;
    j["suite"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    suites.push_back(j);
    pass = pass && r.pass;
  }
  ojson out;
  out["suites"] = suites;
  out["pass"] = pass;
  if (all_pass) *all_pass = pass;
  return out;
}

}  // namespace tfb
