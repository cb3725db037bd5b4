#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tfbound/numerics.hpp"
#include "tfbound/report.hpp"

namespace tfb {

// Even bump g = m-fold self-convolution of the indicator of [-a,a] with
// a = epsilon/m, paired with its cosine transform
//   h(xi) = (2 sin(a xi)/xi)^m,  h(i t) = (2 sinh(a t)/t)^m.
// m is the smallest even integer with m >= n+1, so h decays like xi^-m,
// integrably against the n-dimensional Plancherel density.
struct BumpPair {
  int n = 2;
  double epsilon = 1.0;
  int m = 4;
  double a = 0.25;
  double nu = 0.5;  // (n-1)/2
  double g0 = 0.0;  // g(0)
  double h0 = 0.0;  // h(0) = (2a)^m = total mass of g
};

BumpPair make_bump_pair(int n, double epsilon);
// Test hook: arbitrary order m >= 1 (odd m is inadmissible on the real axis).
BumpPair make_bump_pair_custom(int n, double epsilon, int m);

double eval_g(const BumpPair& p, double x);
std::complex<double> eval_h(const BumpPair& p, std::complex<double> xi);
double eval_h_real(const BumpPair& p, double r);  // h(r), r real
double eval_h_imag(const BumpPair& p, double t);  // h(i t), real-valued

struct CheckIssue {
  std::string check;
  double at = 0.0;
  double value = 0.0;
};

struct AdmissibilityReport {
  bool pass = false;
  double decay_slope = 0.0;  // log|h| vs log r at sine-lobe peaks
  double slope_required = 0.0;
  int points = 0;
  std::vector<CheckIssue> issues;
  ojson to_json() const;
};

struct SamplingGrid {
  double r_max = 0.0;    // 0 = automatic (several lobes of h)
  int points = 4096;     // per axis segment
  double imag_max = 0.0; // 0 = automatic (nu + 1)
};

// Checks, on sampled grids: g even/non-negative/supported in [-eps, eps];
// h non-negative on the real axis and on i[0, nu+1]; h peaks at 0; decay
// slope at most -(n+1) + 0.1.
AdmissibilityReport verify_admissibility(const BumpPair& p,
                                         const SamplingGrid& grid = {});

struct FourierReport {
  bool pass = false;
  double max_abs_dev = 0.0;
  double tol = 0.0;
  int count = 0;
  double worst_xi = 0.0;
  ojson to_json() const;
};

// Quadrature of 2*integral_0^eps g(x) cos(xi x) dx against the closed form
// h(xi). Requires |xi| <= 50 for every test point.
FourierReport fourier_check(const BumpPair& p, const std::vector<double>& xis,
                            double tol = 1e-8);

}  // namespace tfb
