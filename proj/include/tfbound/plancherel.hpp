#pragma once

#include <complex>
#include <vector>

#include "tfbound/numerics.hpp"

namespace tfb {

// Spherical Plancherel density of hyperbolic n-space, n >= 2:
//   even n:  poly(r) * tanh(pi r), poly of degree n-1 (odd powers only)
//   odd  n:  poly(r), even polynomial of degree n-1
struct PlancherelParts {
  int n = 2;
  std::vector<double> poly;  // coefficients, poly[k] * r^k
  bool has_tanh = false;     // multiply by tanh(pi r)
};

PlancherelParts plancherel_parts(int n);
double density(int n, double r);  // r >= 0

struct BumpPair;  // transform_pairs.hpp

// integral over [0, inf) of h(r) * density(n, r) dr for the compactly
// supported pair h = (2 sin(a r)/r)^m. Oscillatory tails are summed
// analytically (harmonic decomposition of sin^m plus repeated integration by
// parts), so the cost is independent of the decay scale a.
QuadResult spectral_integral(int n, const BumpPair& pair, double rel_tol = 1e-9);

// Same weight structure with an explicit polynomial and saturation factor:
//   integral of sinc(a r)^m * sum_j w_j r^j * tanh(s r) dr   (s = 0 drops tanh)
// Note the *normalized* sinc: the (2a)^m amplitude of a transform pair is NOT
// included, which keeps every intermediate on a sane scale for tiny a.
QuadResult weighted_sinc_integral_normalized(int m, double a,
                                             const std::vector<double>& weight,
                                             double s, double rel_tol = 1e-9);

// Generic fallback driven purely by a decay envelope; used as an independent
// cross-check of the analytic-tail path at modest tolerances.
QuadResult spectral_integral_envelope(int n,
                                      const std::function<double(double)>& h,
                                      const TailEnvelope& env,
                                      const QuadOptions& opts = {});

}  // namespace tfb
