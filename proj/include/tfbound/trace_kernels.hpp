#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tfbound/transform_pairs.hpp"

namespace tfb {

// Composite test-function families built from a bump pair (g, h). `shift`
// is the translation parameter (R for kiss_shift, L for the cosine families).
//
//   kiss_shift:   G = (1+E) g(x) + E (g(x-R+eps)+g(x+R-eps))/2
//                     - (g(x-R)+g(x+R))/2,          E = e^{nu eps}
//                 H = [(1+E) + E cos((R-eps)xi) - cos(R xi)] h(xi)
//   cos_minus_one: G = (g(x-L)+g(x+L))/2 - g(x),  H = (cos(L xi)-1) h(xi)
//   one_plus_cos:  G = g(x) + (g(x-L)+g(x+L))/2,  H = (1+cos(L xi)) h(xi)
enum class KernelKind { kiss_shift, cos_minus_one, one_plus_cos };

struct KernelFamily {
  KernelKind kind = KernelKind::kiss_shift;
  BumpPair base;
  double shift = 0.0;
};

const char* kernel_kind_name(KernelKind k);

// kiss_shift requires shift >= epsilon (the sign argument fails otherwise).
KernelFamily make_kernel(KernelKind kind, const BumpPair& base, double shift);
// Test hook: skips the preconditions so the verifier can catch them.
KernelFamily make_kernel_unchecked(KernelKind kind, const BumpPair& base,
                                   double shift);

double eval_G(const KernelFamily& f, double x);
std::complex<double> eval_H(const KernelFamily& f, std::complex<double> xi);
double eval_H_imag(const KernelFamily& f, double t);  // H(i t), real-valued

struct SignSegment {
  std::string name;
  double lo = 0.0, hi = 0.0;
  int points = 0;
  double worst_margin = 0.0;  // most negative slack across samples; >= 0 is clean
  double worst_at = 0.0;
  int refined = 0;  // samples that triggered local resampling
  bool pass = false;
};

struct SignReport {
  bool pass = false;
  bool precondition_violation = false;
  std::vector<SignSegment> segments;
  std::vector<CheckIssue> issues;
  ojson to_json() const;
};

struct SignGrid {
  int points = 10000;     // per segment
  double slack = 1e-12;   // scale-relative tolerance
  double r_max = 60.0;    // real-axis extent for H checks
  int refine = 100;       // local resample factor near a zero
};

// Samples every sign condition the family is used for; a sample within
// 10*slack of zero triggers a factor-`refine` local resample.
SignReport verify_sign_conditions(const KernelFamily& f,
                                  const SignGrid& grid = {});

}  // namespace tfb
