#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "tfbound/report.hpp"

namespace tfb {

// Twisted-orbit Jacobian factor of a loxodromic isometry with translation
// length `length` and rotational part `rotation` in O(n-1):
//   D = |det(I - e^{-length} rotation^T)|.
struct HolonomySample {
  int n = 2;
  double length = 1.0;
  Eigen::MatrixXd rotation;  // (n-1) x (n-1), orthogonal to 1e-10
};

double holonomy_factor(const HolonomySample& s);
double norm_of_length(double length);  // e^length, length > 0

// (1 - N^-1)^{n-1} <= D <= (1 + N^-1)^{n-1} with N = e^length.
void holonomy_envelope(int n, double length, double* lo, double* hi);

Eigen::MatrixXd haar_orthogonal(int dim, std::mt19937_64& rng);

// n = 2 closed form for trivial rotation: e^{-l/2} * 2 sinh(l/2).
double surface_holonomy_identity(double length);

struct HolonomyReport {
  bool pass = false;
  int n = 0;
  long trials = 0;
  double min_lower_margin = 0.0;  // min over samples of D - lower
  double min_upper_margin = 0.0;  // min over samples of upper - D
  double min_cap_margin = 0.0;    // min of 2^{n-1} - D
  long violations = 0;
  ojson to_json() const;
};

// Draws `trials` Haar-random rotations and lengths uniform in (0.01, 10),
// checking the envelope with absolute slack 1e-10.
HolonomyReport holonomy_bounds_check(int n, long trials, std::uint64_t seed);

}  // namespace tfb
