#include "tfbound/transform_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc_real(double x) {
  if (std::fabs(x) < 1e-4) {
    const double w = x * x;
    return 1.0 - w / 6.0 + w * w / 120.0;
  }
  return std::sin(x) / x;
}

double sinhc_real(double x) {
  if (std::fabs(x) < 1e-4) {
    const double w = x * x;
    return 1.0 + w / 6.0 + w * w / 120.0;
  }
  return std::sinh(x) / x;
}

std::complex<double> sinc_cplx(std::complex<double> z) {
  if (std::abs(z) < 1e-4) {
    const std::complex<double> w = z * z;
    return 1.0 - w / 6.0 + w * w / 120.0;
  }
  return std::sin(z) / z;
}

template <typename T>
T pow_int(T base, int m) {
  T r = T(1);
  for (int i = 0; i < m; ++i) r *= base;
  return r;
}

BumpPair build_pair(int n, double epsilon, int m) {
  if (n < 2) throw domain_error("make_bump_pair: n >= 2");
  if (!(epsilon > 0.0)) throw domain_error("make_bump_pair: epsilon > 0");
  if (m < 1) throw domain_error("make_bump_pair: m >= 1");
  BumpPair p;
  p.n = n;
  p.epsilon = epsilon;
  p.m = m;
  p.a = epsilon / double(m);
  p.nu = 0.5 * double(n - 1);
  p.g0 = bspline_eval(m, p.a, 0.0);
  p.h0 = ipow(2.0 * p.a, m);
  return p;
}

}  // namespace

BumpPair make_bump_pair(int n, double epsilon) {
  // smallest even m >= n+1
  const int m = (n % 2 == 0) ? n + 2 : n + 1;
  return build_pair(n, epsilon, m);
}

BumpPair make_bump_pair_custom(int n, double epsilon, int m) {
  return build_pair(n, epsilon, m);
}

double eval_g(const BumpPair& p, double x) { return bspline_eval(p.m, p.a, x); }

std::complex<double> eval_h(const BumpPair& p, std::complex<double> xi) {
  return pow_int(2.0 * p.a * sinc_cplx(p.a * xi), p.m);
}

double eval_h_real(const BumpPair& p, double r) {
  return ipow(2.0 * p.a * sinc_real(p.a * r), p.m);
}

double eval_h_imag(const BumpPair& p, double t) {
  return ipow(2.0 * p.a * sinhc_real(p.a * t), p.m);
}

ojson AdmissibilityReport::to_json() const {
  ojson j;
  j["pass"] = pass;
  j["decay_slope"] = num(decay_slope);
  j["slope_required"] = num(slope_required);
  j["points"] = points;
  ojson arr = ojson::array();
  for (const CheckIssue& is : issues)
    arr.push_back({{"check", is.check}, {"at", num(is.at)}, {"value", num(is.value)}});
  j["issues"] = arr;
  return j;
}

AdmissibilityReport verify_admissibility(const BumpPair& p,
                                         const SamplingGrid& grid) {
  AdmissibilityReport rep;
  rep.slope_required = -double(p.n + 1) + 0.1;
  const int pts = std::max(grid.points, 64);
  auto issue = [&rep](const char* check, double at, double value) {
    if (rep.issues.size() < 64) rep.issues.push_back({check, at, value});
  };

  // g: even, non-negative, supported in [-eps, eps]
  const double gs = std::max(p.g0, std::numeric_limits<double>::min());
  for (int i = 0; i <= pts; ++i) {
    const double x = (1.05 * p.epsilon) * double(i) / double(pts);
    const double gp = eval_g(p, x), gm = eval_g(p, -x);
    if (gp < -1e-12 * gs) issue("g_nonneg", x, gp);
    if (std::fabs(gp - gm) > 1e-12 * gs) issue("g_even", x, gp - gm);
    if (x > p.epsilon && gp != 0.0) issue("g_support", x, gp);
  }
  for (double f : {1.0, 1.0 + 1e-9, 1.5, 2.0, 10.0}) {
    const double x = f * p.epsilon;
    if (eval_g(p, x) != 0.0) issue("g_support", x, eval_g(p, x));
  }

  // h on the real axis: non-negative, peak at 0
  const double r_hi = grid.r_max > 0.0 ? grid.r_max
                                       : std::max(60.0, 12.0 * kPi / p.a);
  for (int i = 0; i <= pts; ++i) {
    const double r = r_hi * double(i) / double(pts);
    const double h = eval_h_real(p, r);
    if (h < -1e-12 * p.h0) issue("h_real_sign", r, h);
    if (h > p.h0 * (1.0 + 1e-12)) issue("h_peak", r, h);
  }

  // h on the imaginary segment [0, nu+1]: positive
  const double t_hi = grid.imag_max > 0.0 ? grid.imag_max : p.nu + 1.0;
  for (int i = 0; i <= pts; ++i) {
    const double t = t_hi * double(i) / double(pts);
    const double h = eval_h_imag(p, t);
    if (h < -1e-12 * p.h0 || !(h > 0.0) ) issue("h_imag_sign", t, h);
  }

  // decay slope from sine-lobe peaks r_k = (k+1/2) pi / a
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = 4; k <= 44; ++k) {
      const double r = (double(k) + 0.5) * kPi / p.a;
      const double h = std::fabs(eval_h_real(p, r));
      if (!(h > 0.0)) continue;
      const double X = std::log(r), Y = std::log(h);
      sx += X; sy += Y; sxx += X * X; sxy += X * Y;
      ++cnt;
    }
    rep.decay_slope = cnt >= 2
        ? (double(cnt) * sxy - sx * sy) / (double(cnt) * sxx - sx * sx)
        : 0.0;
    if (!(rep.decay_slope <= rep.slope_required))
      issue("decay_slope", rep.decay_slope, rep.slope_required);
  }

  rep.points = pts;
  rep.pass = rep.issues.empty();
  return rep;
}

ojson FourierReport::to_json() const {
  ojson j;
  j["pass"] = pass;
  j["max_abs_dev"] = num(max_abs_dev);
  j["tol"] = num(tol);
  j["count"] = count;
  j["worst_xi"] = num(worst_xi);
  return j;
}

FourierReport fourier_check(const BumpPair& p, const std::vector<double>& xis,
                            double tol) {
  FourierReport rep;
  rep.tol = tol;
  for (double xi : xis) {
    if (std::fabs(xi) > 50.0)
      throw domain_error("fourier_check: |xi| <= 50 required");
    auto f = [&p, xi](double x) { return eval_g(p, x) * std::cos(xi * x); };
    QuadOptions o;
    o.rel_tol = 1e-11;
    o.abs_tol = 1e-13 * p.h0;
    o.initial_panel_width =
        std::min(p.epsilon, kPi / (2.0 * (std::fabs(xi) + 1e-9)));
    const double transform =
        2.0 * integrate_adaptive(f, 0.0, p.epsilon, o).value;
    const double dev = std::fabs(transform - eval_h_real(p, xi));
    if (dev > rep.max_abs_dev) {
      rep.max_abs_dev = dev;
      rep.worst_xi = xi;
    }
    ++rep.count;
  }
  rep.pass = rep.max_abs_dev <= tol;
  return rep;
}

}  // namespace tfb
