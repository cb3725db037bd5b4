#include "tfbound/trace_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfb {

namespace {

double kiss_E(const KernelFamily& f) {
  return std::exp(f.base.nu * f.base.epsilon);
}

// scalar multiplier M(xi) with H(xi) = M(xi) h(xi)
std::complex<double> multiplier(const KernelFamily& f,
                                std::complex<double> xi) {
  const double L = f.shift;
  switch (f.kind) {
    case KernelKind::kiss_shift: {
      const double E = kiss_E(f);
      return (1.0 + E) + E * std::cos((L - f.base.epsilon) * xi) -
             std::cos(L * xi);
    }
    case KernelKind::cos_minus_one:
      return std::cos(L * xi) - 1.0;
    case KernelKind::one_plus_cos:
      return std::cos(L * xi) + 1.0;
  }
  return 0.0;
}

double multiplier_imag(const KernelFamily& f, double t) {
  const double L = f.shift;
  switch (f.kind) {
    case KernelKind::kiss_shift: {
      const double E = kiss_E(f);
      return (1.0 + E) + E * std::cosh((L - f.base.epsilon) * t) -
             std::cosh(L * t);
    }
    case KernelKind::cos_minus_one:
      return std::cosh(L * t) - 1.0;
    case KernelKind::one_plus_cos:
      return std::cosh(L * t) + 1.0;
  }
  return 0.0;
}

}  // namespace

const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::kiss_shift: return "kiss_shift";
    case KernelKind::cos_minus_one: return "cos_minus_one";
    case KernelKind::one_plus_cos: return "one_plus_cos";
  }
  return "?";
}

KernelFamily make_kernel_unchecked(KernelKind kind, const BumpPair& base,
                                   double shift) {
  KernelFamily f;
  f.kind = kind;
  f.base = base;
  f.shift = shift;
  return f;
}

KernelFamily make_kernel(KernelKind kind, const BumpPair& base, double shift) {
  if (!(shift > 0.0)) throw domain_error("make_kernel: shift > 0");
  if (kind == KernelKind::kiss_shift && shift < base.epsilon)
    throw domain_error("make_kernel: kiss_shift requires shift >= epsilon");
  return make_kernel_unchecked(kind, base, shift);
}

double eval_G(const KernelFamily& f, double x) {
  const BumpPair& p = f.base;
  const double L = f.shift;
  const double side = 0.5 * (eval_g(p, x - L) + eval_g(p, x + L));
  switch (f.kind) {
    case KernelKind::kiss_shift: {
      const double E = kiss_E(f);
      const double e = p.epsilon;
      const double inner =
          0.5 * (eval_g(p, x - L + e) + eval_g(p, x + L - e));
      return (1.0 + E) * eval_g(p, x) + E * inner - side;
    }
    case KernelKind::cos_minus_one:
      return side - eval_g(p, x);
    case KernelKind::one_plus_cos:
      return eval_g(p, x) + side;
  }
  return 0.0;
}

std::complex<double> eval_H(const KernelFamily& f, std::complex<double> xi) {
  return multiplier(f, xi) * eval_h(f.base, xi);
}

double eval_H_imag(const KernelFamily& f, double t) {
  return multiplier_imag(f, t) * eval_h_imag(f.base, t);
}

ojson SignReport::to_json() const {
  ojson j;
  j["pass"] = pass;
  j["precondition_violation"] = precondition_violation;
  ojson segs = ojson::array();
  for (const SignSegment& s : segments) {
    segs.push_back({{"name", s.name},
                    {"lo", num(s.lo)},
                    {"hi", num(s.hi)},
                    {"points", s.points},
                    {"worst_margin", num(s.worst_margin)},
                    {"worst_at", num(s.worst_at)},
                    {"refined", s.refined},
                    {"pass", s.pass}});
  }
  j["segments"] = segs;
  ojson arr = ojson::array();
  for (const CheckIssue& is : issues)
    arr.push_back(
        {{"check", is.check}, {"at", num(is.at)}, {"value", num(is.value)}});
  j["issues"] = arr;
  return j;
}

namespace {

// One-sided claim value(x) >= 0 up to slack*scale, sampled on [lo, hi];
// samples within 10*slack*scale of zero trigger a local resample.
SignSegment check_nonneg(const std::string& name,
                         const std::function<double(double)>& value, double lo,
                         double hi, const SignGrid& grid, double scale,
                         std::vector<CheckIssue>& issues) {
  SignSegment seg;
  seg.name = name;
  seg.lo = lo;
  seg.hi = hi;
  seg.points = grid.points;
  seg.worst_margin = std::numeric_limits<double>::infinity();
  const double tol = grid.slack * scale;
  const double step = (hi - lo) / double(grid.points);
  auto record = [&](double x, double v) {
    if (v < seg.worst_margin) {
      seg.worst_margin = v;
      seg.worst_at = x;
    }
    if (v < -tol && issues.size() < 64) issues.push_back({seg.name, x, v});
  };
  for (int i = 0; i <= grid.points; ++i) {
    const double x = (i == grid.points) ? hi : lo + step * double(i);
    const double v = value(x);
    record(x, v);
    if (std::fabs(v) <= 10.0 * tol && step > 0.0) {
      ++seg.refined;
      const double rl = std::max(lo, x - step), rh = std::min(hi, x + step);
      for (int k = 0; k <= grid.refine; ++k) {
        const double xr = rl + (rh - rl) * double(k) / double(grid.refine);
        record(xr, value(xr));
      }
    }
  }
  seg.pass = seg.worst_margin >= -tol;
  return seg;
}

}  // namespace

SignReport verify_sign_conditions(const KernelFamily& f, const SignGrid& grid) {
  SignReport rep;
  const BumpPair& p = f.base;
  const double L = f.shift;
  const double eps = p.epsilon;

  if (!(L > 0.0) ||
      (f.kind == KernelKind::kiss_shift && L < eps * (1.0 - 1e-15))) {
    rep.precondition_violation = true;
    rep.issues.push_back({"precondition", L, eps});
    rep.pass = false;
    return rep;
  }

  auto segment = [&](const std::string& name,
                     const std::function<double(double)>& v, double lo,
                     double hi, double scale) {
    rep.segments.push_back(
        check_nonneg(name, v, lo, hi, grid, scale, rep.issues));
  };

  const double E = std::exp(p.nu * eps);
  switch (f.kind) {
    case KernelKind::kiss_shift: {
      // geometric side: G <= 0 at and beyond the shift
      segment("G_nonpos_beyond_shift",
              [&](double x) { return -eval_G(f, x); }, L, L + 10.0 * eps,
              p.g0);
      // pinned value G(shift) = -g(0)/2
      {
        SignSegment seg;
        seg.name = "G_at_shift_identity";
        seg.lo = seg.hi = L;
        seg.points = 1;
        seg.worst_at = L;
        const double dev = std::fabs(eval_G(f, L) + 0.5 * p.g0);
        seg.worst_margin = 1e-12 * p.g0 - dev;
        seg.pass = dev <= 1e-12 * p.g0;
        if (!seg.pass) rep.issues.push_back({seg.name, L, dev});
        rep.segments.push_back(seg);
      }
      const double h_scale = p.h0 * 2.0 * (1.0 + E);
      segment("H_nonneg_real",
              [&](double r) { return eval_H(f, {r, 0.0}).real(); }, 0.0,
              grid.r_max, h_scale);
      segment("multiplier_lower_real",
              [&](double r) { return multiplier(f, {r, 0.0}).real(); }, 0.0,
              grid.r_max, 2.0 * (1.0 + E));
      segment("multiplier_upper_real",
              [&](double r) {
                return 2.0 * (1.0 + E) - multiplier(f, {r, 0.0}).real();
              },
              0.0, grid.r_max, 2.0 * (1.0 + E));
      const double t_hi = p.nu;
      const double im_scale =
          std::fabs(eval_H_imag(f, t_hi)) + p.h0 * 2.0 * (1.0 + E);
      segment("H_nonneg_imag", [&](double t) { return eval_H_imag(f, t); },
              0.0, t_hi, im_scale);
      segment("multiplier_gap_imag",
              [&](double t) {
                return E * std::cosh((L - eps) * t) - std::cosh(L * t);
              },
              0.0, t_hi, E * std::cosh((L - eps) * t_hi) + std::cosh(L * t_hi));
      break;
    }
    case KernelKind::cos_minus_one: {
      segment("H_nonpos_real",
              [&](double r) { return -eval_H(f, {r, 0.0}).real(); }, 0.0,
              grid.r_max, 2.0 * p.h0);
      segment("H_above_minus_2h",
              [&](double r) {
                return eval_H(f, {r, 0.0}).real() + 2.0 * eval_h_real(p, r);
              },
              0.0, grid.r_max, 2.0 * p.h0);
      const double t_hi = p.nu;
      const double im_scale = std::fabs(eval_H_imag(f, t_hi)) + p.h0;
      segment("H_nonneg_imag", [&](double t) { return eval_H_imag(f, t); },
              0.0, t_hi, im_scale);
      break;
    }
    case KernelKind::one_plus_cos: {
      segment("H_nonneg_real",
              [&](double r) { return eval_H(f, {r, 0.0}).real(); }, 0.0,
              grid.r_max, 2.0 * p.h0);
      const double t_hi = p.nu;
      const double im_scale = std::fabs(eval_H_imag(f, t_hi)) + p.h0;
      segment("H_nonneg_imag", [&](double t) { return eval_H_imag(f, t); },
              0.0, t_hi, im_scale);
      segment("G_nonneg", [&](double x) { return eval_G(f, x); }, 0.0,
              L + 2.0 * eps, p.g0);
      segment("G_below_2g0",
              [&](double x) { return 2.0 * p.g0 - eval_G(f, x); }, 0.0,
              L + 2.0 * eps, p.g0);
      break;
    }
  }

  rep.pass = !rep.precondition_violation;
  for (const SignSegment& s : rep.segments) rep.pass = rep.pass && s.pass;
  return rep;
}

}  // namespace tfb
