#pragma once

#include <functional>

#include "tfbound/errors.hpp"

namespace tfb {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimate: sum of panel estimates plus analytic tail bounds
  long evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;  // accept when error <= max(abs_tol, rel_tol*|value|)
  long max_panels = 200000;
  double initial_panel_width = 0.0;  // oscillation hint; 0 = one initial panel
};

// Decay certificate for the integrand on [t_min, inf):
//   power:        |f(t)| <= c * t^-p   (p > 1)
//   exponential:  |f(t)| <= c * e^{-p t}   (p > 0)
struct TailEnvelope {
  enum class Kind { power, exponential };
  Kind kind = Kind::power;
  double c = 1.0;
  double p = 2.0;
  double t_min = 1.0;
};

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                              double hi, const QuadOptions& opts = {});

// Truncates at T chosen so the envelope tail is below half the accuracy
// target; never evaluates f beyond T. Throws quadrature_error (carrying the
// best value seen) if the panel budget runs out first.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   const TailEnvelope& env,
                                   const QuadOptions& opts = {});

double double_factorial(int j);  // j!! for j >= -1; (-1)!! = 0!! = 1

// m-fold self-convolution of the indicator of [-a,a], evaluated at x.
// Supported in [-ma, ma]; central value for a = 1/2, m = 4 is 2/3.
double bspline_eval(int m, double a, double x);

double ball_volume(int n, double r);  // volume of a hyperbolic n-ball

// Offset convention: integral from 2 to x of dt/log t. Requires x > 1.
double log_integral(double x);
// Principal-value convention: log_integral(x) + li_two().
double log_integral_complete(double x);
double li_two();  // PV integral from 0 to 2 of dt/log t, cached

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace tfb
