#pragma once

#include <map>
#include <string>
#include <vector>

#include "tfbound/report.hpp"

namespace tfb {

// Dimension-indexed constants that the library treats as inputs, not results:
//   W[n]  Weyl-term constant of the spectral counting function on H^n
//   K[n]  Margulis-type constant controlling the thin part in dimension n
//   v[n]  volume lower bound for closed hyperbolic n-manifolds
// v[2] = 4*pi is built in (Gauss-Bonnet); everything else must be configured.
struct ExternalConstants {
  std::map<int, double> W, K, v;

  bool has_W(int n) const { return W.count(n) > 0; }
  bool has_K(int n) const { return K.count(n) > 0; }
  bool has_v(int n) const;
  double get_W(int n) const;  // throws config_error when absent
  double get_K(int n) const;
  double get_v(int n) const;
};

struct ConstantEntry {
  std::string name;
  double value = 0.0;
  double error = 0.0;  // propagated quadrature error; 0 for closed forms
};

struct BoundReport {
  std::string operation;
  ojson inputs = ojson::object();
  std::vector<ConstantEntry> constants;
  ojson branches = ojson::array();
  bool has_bound = false;
  double bound = 0.0;
  double bound_error = 0.0;
  bool vacuous = false;  // lower bounds only: value <= 0
  std::vector<std::string> notes;

  void add(const std::string& name, double value, double error = 0.0);
  double get(const std::string& name) const;  // throws domain_error if absent
  double get_error(const std::string& name) const;
  ojson to_json() const;
};

enum class TanhVariant { pi_r, r };

// e^{(n-1)L} / ((n-1)L): the growth rate that both count bounds bracket.
double pgt_asymptotic(int n, double L);

// Dimensional constant of the kissing bound, built from the canonical pair at
// epsilon_n = 4^-(n+3).
BoundReport constant_A(int n, double tol = 1e-9);

// n = 2 sharpened constant: C' = 2(1+e^{eps/2})/(pi g(0)) * integral of
// h(r) r tanh(s r) dr with s = pi (variant pi_r) or s = 1 (variant r),
// plus the universal form U = 2 pi C'.
BoundReport surface_kiss_constant(double epsilon, double tol, TanhVariant v);
BoundReport surface_kiss_constants(double epsilon, double tol = 1e-9);  // both

struct ManifoldParams {
  int n = 2;
  double vol = 0.0;
  double sys = 0.0;
};

// min over applicable branches: main A_n vol e^{nu sys}/sys; thin-part branch
// for small systole (n = 2 closed form, n >= 3 needs K[n]).
BoundReport kiss_upper_bound(const ManifoldParams& p,
                             const ExternalConstants& ext, double tol = 1e-9);

// Systole-free form: A''_n vol^2 / log(1+vol), valid for vol >= v[n].
BoundReport volume_kiss_bound(int n, double vol,
                                   const ExternalConstants& ext,
                                   double tol = 1e-9);

// Primitive classes with length in [L-delta, L+delta] (upper) and the matching
// lower bound; lower is reported vacuous when the main term loses.
BoundReport interval_count_upper(int n, double delta, double vol, double L,
                                 const ExternalConstants& ext,
                                 double tol = 1e-9);
BoundReport interval_count_lower(int n, double delta, double vol, double L,
                                 const ExternalConstants& ext,
                                 double tol = 1e-9);

// Primitive classes with length in (0, L].
BoundReport cumulative_upper(int n, double delta, double vol, double L,
                             const ExternalConstants& ext, double tol = 1e-9);
BoundReport cumulative_lower(int n, double delta, double vol, double L,
                             const ExternalConstants& ext, double tol = 1e-9);

// All L-independent constants of the counting chains at a given delta:
// B, B', C, D, C', D'.
BoundReport delta_constants(int n, double delta, const ExternalConstants& ext,
                            double tol = 1e-9);

}  // namespace tfb
