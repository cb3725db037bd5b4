#include "tfbound/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfbound/transform_pairs.hpp"

namespace tfb {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> poly_mul(const std::vector<double>& p,
                             const std::vector<double>& q) {
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

double horner(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// sin^m u = A[0] + sum_{k>=1} A[k] cos(2 k u), m even.
std::vector<double> sin_power_harmonics(int m) {
  // Pascal row for C(m, .); exact in double through m ~ 56.
  std::vector<double> c(size_t(m) + 1, 0.0);
  c[0] = 1.0;
  for (int i = 1; i <= m; ++i)
    for (int j = i; j >= 1; --j) c[size_t(j)] += c[size_t(j) - 1];
  const double scale = ipow(0.5, m);
  std::vector<double> A(size_t(m / 2) + 1, 0.0);
  A[0] = c[size_t(m / 2)] * scale;
  for (int k = 1; k <= m / 2; ++k)
    A[size_t(k)] = 2.0 * (k % 2 ? -1.0 : 1.0) * c[size_t(m / 2 - k)] * scale;
  return A;
}

struct TailPiece {
  double value = 0.0;
  double bound = 0.0;  // remainder bound for the truncated expansion
};

// integral over [x, inf) of cos(b u) u^{-q} du by repeated integration by
// parts; asymptotic series truncated at the first term below eps_abs or at
// the minimal term.
TailPiece osc_tail(double b, int q0, double x, double eps_abs) {
  const double sb = std::sin(b * x), cb = std::cos(b * x);
  double val = 0.0, coef = 1.0;
  int q = q0;
  bool cos_mode = true;
  TailPiece best{0.0, std::numeric_limits<double>::infinity()};
  for (int it = 0; it < 400; ++it) {
    const double xq = std::pow(x, -double(q));
    if (cos_mode) {
      val += coef * (-sb * xq / b);
      coef *= double(q) / b;
    } else {
      val += coef * (cb * xq / b);
      coef *= -double(q) / b;
    }
    ++q;
    cos_mode = !cos_mode;
    const double xq1 = xq / x;
    const double rem =
        std::fabs(coef) * std::min(xq1 * x / double(q - 1), 2.0 * xq1 / b);
    if (rem < best.bound) best = {val, rem};
    if (rem < eps_abs) return {val, rem};
    if (rem > 4.0 * best.bound) break;  // series turned divergent
  }
  return best;
}

// integral over [x, inf) of sin^m(u) u^{-q} du, q >= 2.
TailPiece sinm_tail(int m, int q, double x, double eps_abs) {
  const std::vector<double> A = sin_power_harmonics(m);
  TailPiece out;
  out.value = A[0] * std::pow(x, 1.0 - double(q)) / (double(q) - 1.0);
  const double per = eps_abs / double(m / 2);
  for (int k = 1; k <= m / 2; ++k) {
    TailPiece t = osc_tail(2.0 * double(k), q, x, per / std::fabs(A[size_t(k)]));
    out.value += A[size_t(k)] * t.value;
    out.bound += std::fabs(A[size_t(k)]) * t.bound;
  }
  return out;
}

double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    const double w = x * x;
    return 1.0 - w / 6.0 + w * w / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

PlancherelParts plancherel_parts(int n) {
  if (n < 2) throw domain_error("plancherel_parts: n >= 2");
  PlancherelParts out;
  out.n = n;
  if (n % 2 == 0) {
    out.has_tanh = true;
    out.poly = {0.0, 1.0};  // r
    for (int k = 0; k <= (n - 4) / 2 && n >= 4; ++k) {
      const double m = (double(k) + 0.5) * (double(k) + 0.5);
      out.poly = poly_mul(out.poly, {m, 0.0, 1.0});
    }
    const double denom = std::pow(2.0 * kPi, 0.5 * double(n)) *
                         double_factorial(n - 2);
    for (double& c : out.poly) c /= denom;
  } else {
    out.has_tanh = false;
    out.poly = {1.0};
    for (int k = 0; k <= (n - 3) / 2; ++k) {
      const double m = double(k) * double(k);
      out.poly = poly_mul(out.poly, {m, 0.0, 1.0});
    }
    const double denom = std::pow(2.0, 0.5 * double(n - 1)) *
                         std::pow(kPi, 0.5 * double(n + 1)) *
                         double_factorial(n - 2);
    for (double& c : out.poly) c /= denom;
  }
  return out;
}

double density(int n, double r) {
  if (r < 0.0) throw domain_error("density: r >= 0");
  const PlancherelParts p = plancherel_parts(n);
  double v = horner(p.poly, r);
  if (p.has_tanh) v *= std::tanh(kPi * r);
  return v;
}

QuadResult weighted_sinc_integral_normalized(int m, double a,
                                             const std::vector<double>& weight,
                                             double s, double rel_tol) {
  if (m < 2 || m % 2 != 0)
    throw domain_error("weighted_sinc_integral: m must be even, >= 2");
  if (!(a > 0.0)) throw domain_error("weighted_sinc_integral: a > 0");
  if (s < 0.0) throw domain_error("weighted_sinc_integral: s >= 0");
  int nnz = 0;
  for (size_t j = 0; j < weight.size(); ++j) {
    if (weight[j] == 0.0) continue;
    ++nnz;
    if (m - int(j) < 2)
      throw domain_error("weighted_sinc_integral: weight power too high for m");
  }
  if (nnz == 0) return {};

  const double x_t = std::max(20.0, 2.0 * double(m));
  const double R = std::max(s > 0.0 ? 20.0 / s : 0.0, x_t / a);
  auto f = [&](double r) {
    double v = ipow(sinc(a * r), m);
    double p = 0.0;
    for (size_t j = weight.size(); j-- > 0;) p = p * r + weight[j];
    v *= p;
    if (s > 0.0) v *= std::tanh(s * r);
    return v;
  };
  QuadOptions opts;
  opts.rel_tol = 0.5 * rel_tol;
  opts.initial_panel_width = kPi / (2.0 * a);
  QuadResult head = integrate_adaptive(f, 0.0, R, opts);

  const double x0 = a * R;
  const double scale = std::max(std::fabs(head.value), 1e-300);
  const double eps_piece = 0.25 * rel_tol * scale / double(nnz);
  double tail = 0.0, tail_err = 0.0, sat = 0.0;
  for (size_t j = 0; j < weight.size(); ++j) {
    if (weight[j] == 0.0) continue;
    const int q = m - int(j);
    const double fac = weight[j] * std::pow(a, -double(j) - 1.0);
    TailPiece t = sinm_tail(m, q, x0, eps_piece / std::fabs(fac));
    tail += fac * t.value;
    tail_err += std::fabs(fac) * t.bound;
    sat += std::fabs(fac) * std::pow(x0, 1.0 - double(q)) / (double(q) - 1.0);
  }
  const double sat_err = s > 0.0 ? 2.0 * std::exp(-2.0 * s * R) * sat : 0.0;

  QuadResult out;
  out.value = head.value + tail;
  out.error = head.error + tail_err + sat_err;
  out.evaluations = head.evaluations;
  return out;
}

QuadResult spectral_integral(int n, const BumpPair& pair, double rel_tol) {
  const PlancherelParts parts = plancherel_parts(n);
  QuadResult q = weighted_sinc_integral_normalized(
      pair.m, pair.a, parts.poly, parts.has_tanh ? kPi : 0.0, rel_tol);
  const double amp = ipow(2.0 * pair.a, pair.m);
  q.value *= amp;
  q.error *= amp;
  return q;
}

QuadResult spectral_integral_envelope(int n,
                                      const std::function<double(double)>& h,
                                      const TailEnvelope& env,
                                      const QuadOptions& opts) {
  auto f = [n, &h](double r) { return h(r) * density(n, r); };
  return integrate_semi_infinite(f, env, opts);
}

}  // namespace tfb
