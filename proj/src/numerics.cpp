#include "tfbound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tfb {

namespace {

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1] (QUADPACK).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
  double lo, hi, value, error;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;  // max-heap on error
  }
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi,
                 long& evals) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  double fv1[7], fv2[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    fv1[i] = f(c + dx);
    fv2[i] = f(c - dx);
    const double sum = fv1[i] + fv2[i];
    resk += kWgk[i] * sum;
    resabs += kWgk[i] * (std::fabs(fv1[i]) + std::fabs(fv2[i]));
    if (i % 2 == 1) resg += kWg[(i - 1) / 2] * sum;
  }
  evals += 15;
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int i = 0; i < 7; ++i)
    resasc +=
        kWgk[i] * (std::fabs(fv1[i] - reskh) + std::fabs(fv2[i] - reskh));
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::numeric_limits<double>::min();
  if (resabs > tiny / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  return {lo, hi, resk * h, err};
}

double sum_sorted_abs(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end(),
            [](double u, double v) { return std::fabs(u) < std::fabs(v); });
  double s = 0.0, comp = 0.0;
  for (double x : xs) {  // Kahan
    const double y = x - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

double tail_bound(const TailEnvelope& env, double T) {
  if (T < env.t_min) return std::numeric_limits<double>::infinity();
  if (env.kind == TailEnvelope::Kind::power)
    return env.c * std::pow(T, 1.0 - env.p) / (env.p - 1.0);
  return env.c * std::exp(-env.p * T) / env.p;
}

double tail_cutoff(const TailEnvelope& env, double target) {
  double T;
  if (env.kind == TailEnvelope::Kind::power)
    T = std::pow(env.c / ((env.p - 1.0) * target), 1.0 / (env.p - 1.0));
  else
    T = std::log(std::max(env.c / (env.p * target), 1.0)) / env.p;
  return std::max(T, env.t_min);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, const QuadOptions& opts) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw domain_error("integrate_adaptive: bad interval");
  QuadResult out;
  if (hi == lo) return out;

  std::vector<Panel> heap;
  long evals = 0;
  long splits = 0;
  {
    double width = hi - lo;
    if (opts.initial_panel_width > 0.0)
      width = std::min(width, opts.initial_panel_width);
    long count = std::lround(std::ceil((hi - lo) / width - 1e-12));
    count = std::max(1L, std::min({count, opts.max_panels, 2000000L}));
    const double step = (hi - lo) / double(count);
    heap.reserve(size_t(count) + 64);
    for (long i = 0; i < count; ++i) {
      const double a = lo + step * double(i);
      const double b = (i + 1 == count) ? hi : lo + step * double(i + 1);
      heap.push_back(eval_panel(f, a, b, evals));
    }
    splits = count;
    std::make_heap(heap.begin(), heap.end(), PanelOrder{});
  }

  auto totals = [&heap]() {
    std::vector<double> vs, es;
    vs.reserve(heap.size());
    es.reserve(heap.size());
    for (const Panel& p : heap) {
      vs.push_back(p.value);
      es.push_back(p.error);
    }
    return std::pair<double, double>(sum_sorted_abs(vs), sum_sorted_abs(es));
  };

  double value = 0.0, error = 0.0;
  for (;;) {
    auto [v, e] = totals();
    value = v;
    error = e;
    if (!std::isfinite(v) || !std::isfinite(e))
      throw quadrature_error("integrate_adaptive: non-finite integrand", v, e);
    if (e <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(v))) break;
    if (splits >= opts.max_panels)
      throw quadrature_error("integrate_adaptive: panel budget exhausted", v,
                             e);
    // Split a batch of the worst panels between (expensive) total re-sums.
    long batch = std::max<long>(1, long(heap.size()) / 8);
    batch = std::min(batch, opts.max_panels - splits);
    for (long i = 0; i < batch; ++i) {
      std::pop_heap(heap.begin(), heap.end(), PanelOrder{});
      Panel worst = heap.back();
      heap.pop_back();
      const double mid = 0.5 * (worst.lo + worst.hi);
      if (mid <= worst.lo || mid >= worst.hi)
        throw quadrature_error(
            "integrate_adaptive: interval underflow before convergence", value,
            error);
      heap.push_back(eval_panel(f, worst.lo, mid, evals));
      std::push_heap(heap.begin(), heap.end(), PanelOrder{});
      heap.push_back(eval_panel(f, mid, worst.hi, evals));
      std::push_heap(heap.begin(), heap.end(), PanelOrder{});
      ++splits;
    }
  }
  out.value = value;
  out.error = error;
  out.evaluations = evals;
  return out;
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   const TailEnvelope& env,
                                   const QuadOptions& opts) {
  if (!(env.c >= 0.0) || !std::isfinite(env.c))
    throw domain_error("integrate_semi_infinite: envelope constant");
  if (env.kind == TailEnvelope::Kind::power && !(env.p > 1.0))
    throw domain_error("integrate_semi_infinite: power envelope needs p > 1");
  if (env.kind == TailEnvelope::Kind::exponential && !(env.p > 0.0))
    throw domain_error(
        "integrate_semi_infinite: exponential envelope needs p > 0");

  // Rough pass for the magnitude so the relative target means something.
  const double T0 = 2.0 * std::max(env.t_min, 1.0);
  QuadOptions rough = opts;
  rough.rel_tol = 1e-3;
  rough.abs_tol = std::max(opts.abs_tol, 1e-300);
  rough.max_panels = std::min<long>(opts.max_panels, 20000);
  double scale;
  long rough_evals = 0;
  try {
    QuadResult r0 = integrate_adaptive(f, 0.0, T0, rough);
    rough_evals = r0.evaluations;
    scale = std::fabs(r0.value) + tail_bound(env, T0);
  } catch (const quadrature_error& e) {
    scale = std::fabs(e.best_value) + tail_bound(env, T0);
    rough_evals = 0;
  }
  if (!std::isfinite(scale) || scale == 0.0) scale = env.c;

  double target = std::max(opts.abs_tol, opts.rel_tol * scale);
  if (!(target > 0.0)) target = 1e-12 * std::max(scale, 1.0);

  const double T = std::max(tail_cutoff(env, 0.5 * target), T0);
  QuadOptions main = opts;
  main.abs_tol = 0.5 * target;
  main.rel_tol = 0.5 * opts.rel_tol;
  QuadResult head = integrate_adaptive(f, 0.0, T, main);
  head.error += tail_bound(env, T);
  head.evaluations += rough_evals;
  return head;
}

double double_factorial(int j) {
  if (j < -1) throw domain_error("double_factorial: j < -1");
  double r = 1.0;
  for (int k = j; k >= 2; k -= 2) r *= double(k);
  return r;
}

// Cox-de Boor on the uniform knot vector 0..m, evaluated at u = x/(2a) + m/2,
// scaled by (2a)^{m-1}. Numerically stable for every m that matters here.
double bspline_eval(int m, double a, double x) {
  if (m < 1 || !(a > 0.0)) throw domain_error("bspline_eval: need m >= 1, a > 0");
  const double half_support = double(m) * a;
  if (std::fabs(x) >= half_support) return 0.0;
  const double u = x / (2.0 * a) + 0.5 * double(m);
  // B-spline basis of order m (degree m-1) on knots 0..m at point u in (0, m).
  std::vector<double> N(size_t(m), 0.0);
  const int cell = std::min(int(u), m - 1);  // u in [cell, cell+1)
  N[size_t(cell)] = 1.0;
  for (int k = 2; k <= m; ++k) {
    // raise order: N_i^k(u) over i = cell-k+1 .. cell, stored at N[i] for i >= 0
    for (int i = std::max(0, cell - k + 1); i <= cell; ++i) {
      const double left = (u - double(i)) * N[size_t(i)];
      const double right =
          (i + 1 <= cell) ? (double(i + k) - u) * N[size_t(i + 1)] : 0.0;
      N[size_t(i)] = (left + right) / double(k - 1);
    }
  }
  // N[0] now holds the single order-m basis function supported on [0, m].
  return ipow(2.0 * a, m - 1) * N[0];
}

double ball_volume(int n, double r) {
  if (n < 2) throw domain_error("ball_volume: n >= 2");
  if (!(r > 0.0)) throw domain_error("ball_volume: r > 0");
  if (double(n - 1) * r > 700.0)
    throw domain_error("ball_volume: (n-1)*r too large (overflow)");
  const double pi = 3.14159265358979323846;
  const double sphere =
      2.0 * std::pow(pi, 0.5 * double(n)) / std::tgamma(0.5 * double(n));
  auto f = [n](double t) { return ipow(std::sinh(t), n - 1); };
  QuadOptions o;
  o.rel_tol = 1e-12;
  QuadResult q = integrate_adaptive(f, 0.0, r, o);
  return sphere * q.value;
}

double li_two() {
  static const double value = [] {
    // PV li(2) = integral over (0,2) of (1/log u - 1/(u-1)) du; the principal
    // value of the subtracted pole vanishes by symmetry about u = 1.
    auto f = [](double u) {
      const double v = u - 1.0;
      if (std::fabs(v) < 1e-2) {
        // series of 1/log(1+v) - 1/v
        return 0.5 +
               v * (-1.0 / 12.0 +
                    v * (1.0 / 24.0 +
                         v * (-19.0 / 720.0 +
                              v * (3.0 / 160.0 + v * (-863.0 / 60480.0)))));
      }
      return 1.0 / std::log(u) - 1.0 / v;
    };
    QuadOptions o;
    o.rel_tol = 1e-13;
    return integrate_adaptive(f, 0.0, 2.0, o).value;
  }();
  return value;
}

double log_integral(double x) {
  if (!(x > 1.0)) throw domain_error("log_integral: requires x > 1");
  if (x == 2.0) return 0.0;
  // substitute t = e^u
  const double lo = std::log(2.0), hi = std::log(x);
  auto f = [](double u) { return std::exp(u) / u; };
  QuadOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-14;
  if (hi >= lo) return integrate_adaptive(f, lo, hi, o).value;
  return -integrate_adaptive(f, hi, lo, o).value;
}

double log_integral_complete(double x) { return log_integral(x) + li_two(); }

}  // namespace tfb
