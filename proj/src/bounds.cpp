#include "tfbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tfbound/errors.hpp"
#include "tfbound/numerics.hpp"
#include "tfbound/plancherel.hpp"
#include "tfbound/transform_pairs.hpp"

namespace tfb {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

double missing(const char* which, int n) {
  std::ostringstream os;
  os << "external constant " << which << "[" << n
     << "] not configured (set external_constants." << which << ".\"" << n
     << "\" in the config)";
  throw config_error(os.str());
}

struct VE {
  double v = 0.0, e = 0.0;
};

}  // namespace

bool ExternalConstants::has_v(int n) const { return v.count(n) > 0 || n == 2; }

double ExternalConstants::get_W(int n) const {
  auto it = W.find(n);
  if (it == W.end()) return missing("W", n);
  return it->second;
}

double ExternalConstants::get_K(int n) const {
  auto it = K.find(n);
  if (it == K.end()) return missing("K", n);
  return it->second;
}

double ExternalConstants::get_v(int n) const {
  auto it = v.find(n);
  if (it != v.end()) return it->second;
  if (n == 2) return 4.0 * kPi;  // Gauss-Bonnet floor for closed surfaces
  return missing("v", n);
}

void BoundReport::add(const std::string& name, double value, double error) {
  constants.push_back({name, value, error});
}

double BoundReport::get(const std::string& name) const {
  for (const ConstantEntry& c : constants)
    if (c.name == name) return c.value;
  throw domain_error("BoundReport: no constant named " + name);
}

double BoundReport::get_error(const std::string& name) const {
  for (const ConstantEntry& c : constants)
    if (c.name == name) return c.error;
  throw domain_error("BoundReport: no constant named " + name);
}

ojson BoundReport::to_json() const {
  ojson j;
  j["operation"] = operation;
  j["inputs"] = inputs;
  ojson cs = ojson::array();
  for (const ConstantEntry& c : constants) {
    ojson e;
    e["name"] = c.name;
    e["value"] = num(c.value);
    if (c.error != 0.0) e["error"] = num(c.error);
    cs.push_back(e);
  }
  j["constants"] = cs;
  if (!branches.empty()) j["branches"] = branches;
  if (has_bound) {
    j["bound"] = num(bound);
    if (bound_error != 0.0) j["bound_error"] = num(bound_error);
  }
  if (vacuous) j["vacuous"] = true;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

double pgt_asymptotic(int n, double L) {
  if (n < 2) throw domain_error("pgt_asymptotic: n >= 2");
  if (!(L > 0.0)) throw domain_error("pgt_asymptotic: L > 0");
  const double nu2 = double(n - 1);
  return std::exp(nu2 * L) / (nu2 * L);
}

namespace {

// A_n = 2^{n+1} (1 + e^{nu eps_n}) * integral(h Phi_n) / g(0) at the canonical
// eps_n = 4^{-(n+3)}, evaluated in normalized form so nothing under/overflows
// on the way.
VE constant_A_value(int n, double tol, BoundReport* rep) {
  if (n < 2) throw domain_error("constant_A: n >= 2");
  const double eps = std::pow(4.0, -double(n + 3));
  const int m = (n % 2 == 0) ? n + 2 : n + 1;
  const double a = eps / double(m);
  const double nu = 0.5 * double(n - 1);
  const double Bc = bspline_eval(m, 0.5, 0.0);  // unit-width central value
  const PlancherelParts parts = plancherel_parts(n);
  const QuadResult In = weighted_sinc_integral_normalized(
      m, a, parts.poly, parts.has_tanh ? kPi : 0.0, tol);
  const double pre = std::pow(2.0, double(n + 1)) *
                     (1.0 + std::exp(nu * eps)) * (2.0 * a) / Bc;
  VE A{pre * In.value, pre * In.error};
  if (!std::isfinite(A.v))
    throw domain_error("constant_A: value overflows for this n");
  if (rep) {
    rep->add("eps_n", eps);
    rep->add("m", m);
    rep->add("a", a);
    rep->add("spectral_integral_normalized", In.value, In.error);
    rep->add("A_n", A.v, A.e);
  }
  return A;
}

}  // namespace

BoundReport constant_A(int n, double tol) {
  BoundReport rep;
  rep.operation = "constant_A";
  rep.inputs["n"] = n;
  rep.inputs["tol"] = num(tol);
  constant_A_value(n, tol, &rep);
  return rep;
}

BoundReport surface_kiss_constant(double epsilon, double tol, TanhVariant v) {
  if (!(epsilon > 0.0)) throw domain_error("surface_kiss_constant: epsilon > 0");
  BoundReport rep;
  rep.operation = "surface_kiss_constant";
  rep.inputs["epsilon"] = num(epsilon);
  rep.inputs["variant"] = v == TanhVariant::pi_r ? "tanh_pi_r" : "tanh_r";
  const BumpPair pair = make_bump_pair(2, epsilon);
  const double s = v == TanhVariant::pi_r ? kPi : 1.0;
  const QuadResult Jn =
      weighted_sinc_integral_normalized(pair.m, pair.a, {0.0, 1.0}, s, tol);
  const double amp = ipow(2.0 * pair.a, pair.m);
  const double pre = 2.0 * (1.0 + std::exp(0.5 * epsilon)) / (kPi * pair.g0);
  const double C = pre * amp * Jn.value;
  const double Ce = pre * amp * Jn.error;
  rep.add("g0", pair.g0);
  rep.add("J", amp * Jn.value, amp * Jn.error);
  rep.add("C_prime", C, Ce);
  rep.add("U", 2.0 * kPi * C, 2.0 * kPi * Ce);
  rep.has_bound = true;
  rep.bound = C;
  rep.bound_error = Ce;
  return rep;
}

BoundReport surface_kiss_constants(double epsilon, double tol) {
  BoundReport rep;
  rep.operation = "surface_kiss_constants";
  rep.inputs["epsilon"] = num(epsilon);
  const double kReference = 10.1391;  // known value of the sharpened constant
  bool disagree = false;
  double last = 0.0;
  for (TanhVariant v : {TanhVariant::pi_r, TanhVariant::r}) {
    BoundReport one = surface_kiss_constant(epsilon, tol, v);
    const char* tag = v == TanhVariant::pi_r ? "tanh_pi_r" : "tanh_r";
    ojson b;
    b["variant"] = tag;
    b["C_prime"] = num(one.get("C_prime"));
    b["U"] = num(one.get("U"));
    b["matches_reference_10_1391"] =
        std::fabs(one.get("C_prime") - kReference) < 5e-4;
    rep.branches.push_back(b);
    rep.add(std::string("C_prime_") + tag, one.get("C_prime"),
            one.get_error("C_prime"));
    rep.add(std::string("U_") + tag, one.get("U"), one.get_error("U"));
    if (v == TanhVariant::r && std::fabs(one.get("C_prime") - last) > 1e-6)
      disagree = true;
    last = one.get("C_prime");
  }
  if (disagree)
    rep.notes.push_back(
        "the two tanh saturation variants disagree; tanh_pi_r is the one "
        "consistent with the spectral density and reproduces 10.1391");
  return rep;
}

BoundReport kiss_upper_bound(const ManifoldParams& p,
                             const ExternalConstants& ext, double tol) {
  if (p.n < 2) throw domain_error("kiss_upper_bound: n >= 2");
  if (!(p.vol > 0.0)) throw domain_error("kiss_upper_bound: vol > 0");
  if (!(p.sys > 0.0)) throw domain_error("kiss_upper_bound: sys > 0");
  BoundReport rep;
  rep.operation = "kiss_upper_bound";
  rep.inputs["n"] = p.n;
  rep.inputs["vol"] = num(p.vol);
  rep.inputs["sys"] = num(p.sys);
  const double nu = 0.5 * double(p.n - 1);
  const VE A = constant_A_value(p.n, tol, &rep);

  double best = std::numeric_limits<double>::infinity(), best_err = 0.0;
  auto push = [&](const char* name, bool applicable, bool available, double v,
                  double e, const char* note) {
    ojson b;
    b["name"] = name;
    b["applicable"] = applicable;
    if (!available) b["available"] = false;
    if (applicable && available) {
      b["value"] = num(v);
      if (e != 0.0) b["error"] = num(e);
      if (v < best) {
        best = v;
        best_err = e;
      }
    }
    if (note) b["note"] = note;
    rep.branches.push_back(b);
  };

  const double main_v = A.v * p.vol * std::exp(nu * p.sys) / p.sys;
  const double main_e = A.e * p.vol * std::exp(nu * p.sys) / p.sys;
  push("main", true, true, main_v, main_e, nullptr);

  if (p.n == 2) {
    const double cut = 2.0 * std::asinh(1.0);
    push("thin_collar", p.sys <= cut, true, 1.5 / kPi * p.vol, 0.0,
         "valid for sys <= 2 asinh 1");
  } else {
    const double cut = std::pow(4.0, -double(p.n + 2));
    const bool applicable = p.sys <= cut;
    if (!applicable) {
      push("thin_collar", false, true, 0.0, 0.0, nullptr);
    } else if (!ext.has_K(p.n)) {
      push("thin_collar", true, false, 0.0, 0.0,
           "K[n] not configured; branch skipped");
    } else {
      const double expo =
          double((p.n - 2) / 2) / double((p.n + 1) / 2);
      const double v =
          2.0 / ext.get_K(p.n) * p.vol * std::pow(p.sys, expo);
      push("thin_collar", true, true, v, 0.0, nullptr);
    }
  }

  rep.has_bound = true;
  rep.bound = best;
  rep.bound_error = best_err;
  return rep;
}

BoundReport volume_kiss_bound(int n, double vol,
                                   const ExternalConstants& ext, double tol) {
  if (n < 2) throw domain_error("volume_kiss_bound: n >= 2");
  BoundReport rep;
  rep.operation = "volume_kiss_bound";
  rep.inputs["n"] = n;
  rep.inputs["vol"] = num(vol);
  const double vn = ext.get_v(n);
  if (!(vol >= vn))
    throw domain_error("volume_kiss_bound: vol below the volume floor v[n]");
  const double nu = 0.5 * double(n - 1);
  const double rn = 1.0 / double(n - 1);
  const double beta = std::pow(kPi, 0.5 * double(n)) /
                      (std::tgamma(0.5 * double(n)) * double(n - 1) *
                       std::pow(2.0, double(n - 1)));
  const double dn = std::min(vn * (1.0 - 1e-9), beta);
  const double a_raw = std::log(vn / dn) / std::log1p(vn);
  const double an = std::min(a_raw, 1.0);
  if (a_raw > 1.0)
    rep.notes.push_back("window exponent clamped to 1 so the log comparison "
                        "holds for every vol >= v[n]");
  const double sn =
      n == 2 ? 2.0 * std::asinh(1.0) : std::pow(4.0, -double(n + 2));
  double thin_sup;
  if (n == 2) {
    thin_sup = 1.5 / kPi;
  } else {
    const double expo = double((n - 2) / 2) / double((n + 1) / 2);
    thin_sup = 2.0 / ext.get_K(n) * std::pow(sn, expo);
  }
  const VE A = constant_A_value(n, tol, nullptr);
  const double bn =
      std::max(thin_sup, A.v * std::max(std::exp(nu * sn) / sn,
                                        std::exp(2.0 * nu * rn) / (2.0 * rn)));
  const double A2 = std::max(A.v * double(n - 1) / (2.0 * an * dn),
                             bn * std::log1p(vn) / vn);
  const double A2e = A2 * (A.v > 0.0 ? A.e / A.v : 0.0);
  rep.add("v_n", vn);
  rep.add("beta_n", beta);
  rep.add("d_n", dn);
  rep.add("a_n", an);
  rep.add("s_n", sn);
  rep.add("A_n", A.v, A.e);
  rep.add("b_n", bn);
  rep.add("A_n_systole_free", A2, A2e);
  rep.has_bound = true;
  rep.bound = A2 * vol * vol / std::log1p(vol);
  rep.bound_error = A2e * vol * vol / std::log1p(vol);
  return rep;
}

namespace {

struct CountChain {
  int n;
  double delta, nu;
  VE B, Bp;      // window and cumulative upper constants
  VE C, D;       // window lower constants
  VE Cp, Dp;     // cumulative lower constants
  bool has_lower_cumulative = false;
};

// B = 2^n e^{3 nu delta} (K W_n + I) / (mu delta) with the 2delta-pair;
// B' sums B over a covering of (0, 3] and tops up with the tail weight of
// x/log + x/log^2 + 3x/log^3 (integrated form).
CountChain build_chain(int n, double delta, const ExternalConstants& ext,
                       double tol, bool want_lower, BoundReport* rep) {
  if (n < 2) throw domain_error("count bounds: n >= 2");
  if (!(delta > 0.0)) throw domain_error("count bounds: delta > 0");
  CountChain ch;
  ch.n = n;
  ch.delta = delta;
  ch.nu = 0.5 * double(n - 1);
  const double Wn = ext.get_W(n);

  const BumpPair wide = make_bump_pair(n, 2.0 * delta);
  const double mu = eval_g(wide, delta);
  const double Kc = eval_h_imag(wide, ch.nu);
  const QuadResult Iw = spectral_integral(n, wide, tol);
  const double pre = std::pow(2.0, double(n)) * std::exp(3.0 * ch.nu * delta) /
                     (mu * delta);
  ch.B = {pre * (Kc * Wn + 2.0 * Iw.value), pre * 2.0 * Iw.error};

  const int N = int(std::ceil(3.0 / (2.0 * delta) - 1e-12));
  double cover = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double c = (double(i) - 0.5) * 3.0 / double(N);
    cover += std::exp(double(n - 1) * c) / c;
  }
  const double n1 = double(n - 1);
  const double phi3 = (1.0 + 1.0 / (3.0 * n1) + 1.0 / (3.0 * n1 * n1)) / n1;
  const double bp_of_b = cover / (n1 * kE) + phi3 / delta;
  ch.Bp = {ch.B.v * bp_of_b, ch.B.e * bp_of_b};

  if (rep) {
    rep->add("W_n", Wn);
    rep->add("mu", mu);
    rep->add("h_imag_nu_wide", Kc);
    rep->add("I_wide", 2.0 * Iw.value, 2.0 * Iw.error);
    rep->add("B", ch.B.v, ch.B.e);
    rep->add("covering_count", N);
    rep->add("B_prime", ch.Bp.v, ch.Bp.e);
  }

  if (!want_lower) return ch;

  const BumpPair narrow = make_bump_pair(n, delta);
  const double P = std::pow(1.0 - std::exp(-delta), 2.0 * ch.nu) /
                   (narrow.g0 * std::exp(ch.nu * delta));
  const double hin = eval_h_imag(narrow, ch.nu);
  ch.C = {P * hin / 2.0, 0.0};
  const QuadResult In = spectral_integral(n, narrow, tol);
  const double corr = 4.0 * std::exp(ch.nu * delta);
  ch.D = {P * 2.0 * In.value + corr * ch.Bp.v,
          P * 2.0 * In.error + corr * ch.Bp.e};

  if (rep) {
    rep->add("P", P);
    rep->add("h_imag_nu_narrow", hin);
    rep->add("C", ch.C.v);
    rep->add("I_narrow", 2.0 * In.value, 2.0 * In.error);
    rep->add("D", ch.D.v, ch.D.e);
  }

  if (ext.has_v(n)) {
    const double vn = ext.get_v(n);
    ch.Cp = {ch.C.v / (2.0 * delta * n1), 0.0};
    const double psi6 =
        (1.0 + 1.0 / (6.0 * ch.nu) + 1.0 / (12.0 * ch.nu * ch.nu)) / ch.nu;
    const double li6 = log_integral(std::exp(6.0 * n1));
    const double main_v = ch.D.v * psi6 / (2.0 * delta) +
                          ch.C.v * li6 / (2.0 * delta * vn * ch.nu * kE);
    const double main_e = ch.D.e * psi6 / (2.0 * delta);
    const double floor_v = ch.Cp.v * std::exp(6.0 * ch.nu) / vn;
    ch.Dp = main_v >= floor_v ? VE{main_v, main_e} : VE{floor_v, 0.0};
    ch.has_lower_cumulative = true;
    if (rep) {
      rep->add("C_prime", ch.Cp.v);
      rep->add("D_prime", ch.Dp.v, ch.Dp.e);
    }
  } else if (rep) {
    rep->notes.push_back(
        "v[n] not configured; cumulative lower constants unavailable");
  }
  return ch;
}

}  // namespace

BoundReport interval_count_upper(int n, double delta, double vol, double L,
                                 const ExternalConstants& ext, double tol) {
  if (!(vol > 0.0)) throw domain_error("interval_count_upper: vol > 0");
  if (!(L > 0.0)) throw domain_error("interval_count_upper: L > 0");
  BoundReport rep;
  rep.operation = "interval_count_upper";
  rep.inputs["n"] = n;
  rep.inputs["delta"] = num(delta);
  rep.inputs["vol"] = num(vol);
  rep.inputs["L"] = num(L);
  const CountChain ch = build_chain(n, delta, ext, tol, false, &rep);
  const double growth = std::exp(double(n - 1) * L) / L;
  rep.has_bound = true;
  rep.bound = ch.B.v * vol * growth;
  rep.bound_error = ch.B.e * vol * growth;
  rep.notes.push_back("counts primitive classes with length in [L-delta, L+delta]");
  return rep;
}

BoundReport interval_count_lower(int n, double delta, double vol, double L,
                                 const ExternalConstants& ext, double tol) {
  if (!(vol > 0.0)) throw domain_error("interval_count_lower: vol > 0");
  if (!(L >= delta)) throw domain_error("interval_count_lower: L >= delta");
  BoundReport rep;
  rep.operation = "interval_count_lower";
  rep.inputs["n"] = n;
  rep.inputs["delta"] = num(delta);
  rep.inputs["vol"] = num(vol);
  rep.inputs["L"] = num(L);
  const CountChain ch = build_chain(n, delta, ext, tol, true, &rep);
  const double main = ch.C.v * std::exp(double(n - 1) * L) / L;
  const double loss = ch.D.v * vol * std::exp(ch.nu * L) / L;
  rep.has_bound = true;
  rep.bound = main - loss;
  rep.bound_error = ch.D.e * vol * std::exp(ch.nu * L) / L;
  rep.vacuous = rep.bound <= 0.0;
  rep.notes.push_back("valid when the systole is at least delta");
  return rep;
}

BoundReport cumulative_upper(int n, double delta, double vol, double L,
                             const ExternalConstants& ext, double tol) {
  if (!(vol > 0.0)) throw domain_error("cumulative_upper: vol > 0");
  if (!(L > 0.0)) throw domain_error("cumulative_upper: L > 0");
  BoundReport rep;
  rep.operation = "cumulative_upper";
  rep.inputs["n"] = n;
  rep.inputs["delta"] = num(delta);
  rep.inputs["vol"] = num(vol);
  rep.inputs["L"] = num(L);
  const CountChain ch = build_chain(n, delta, ext, tol, false, &rep);
  const double growth = std::exp(double(n - 1) * L) / L;
  rep.has_bound = true;
  rep.bound = ch.Bp.v * vol * growth;
  rep.bound_error = ch.Bp.e * vol * growth;
  rep.notes.push_back("counts primitive classes with length in (0, L]");
  return rep;
}

BoundReport cumulative_lower(int n, double delta, double vol, double L,
                             const ExternalConstants& ext, double tol) {
  if (!(vol > 0.0)) throw domain_error("cumulative_lower: vol > 0");
  if (!(L > 0.0)) throw domain_error("cumulative_lower: L > 0");
  BoundReport rep;
  rep.operation = "cumulative_lower";
  rep.inputs["n"] = n;
  rep.inputs["delta"] = num(delta);
  rep.inputs["vol"] = num(vol);
  rep.inputs["L"] = num(L);
  if (!(vol >= ext.get_v(n)))
    throw domain_error("cumulative_lower: vol below the volume floor v[n]");
  const CountChain ch = build_chain(n, delta, ext, tol, true, &rep);
  if (!ch.has_lower_cumulative)
    throw config_error("cumulative_lower: v[n] required");
  const double main = ch.Cp.v * std::exp(double(n - 1) * L) / L;
  const double loss = ch.Dp.v * vol * std::exp(ch.nu * L) / L;
  rep.has_bound = true;
  rep.bound = main - loss;
  rep.bound_error = ch.Dp.e * vol * std::exp(ch.nu * L) / L;
  rep.vacuous = rep.bound <= 0.0;
  const double crossover = std::log(ch.Dp.v * vol / ch.Cp.v) / ch.nu;
  rep.add("positivity_crossover_L", crossover);
  rep.notes.push_back("valid when the systole is at least 2*delta");
  rep.notes.push_back("positive only beyond the reported crossover length");
  return rep;
}

BoundReport delta_constants(int n, double delta, const ExternalConstants& ext,
                            double tol) {
  BoundReport rep;
  rep.operation = "delta_constants";
  rep.inputs["n"] = n;
  rep.inputs["delta"] = num(delta);
  build_chain(n, delta, ext, tol, true, &rep);
  return rep;
}

}  // namespace tfb
