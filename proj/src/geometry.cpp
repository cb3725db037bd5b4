#include "tfbound/geometry.hpp"

#include <cmath>
#include <limits>

#include "tfbound/errors.hpp"
#include "tfbound/numerics.hpp"

namespace tfb {

double holonomy_factor(const HolonomySample& s) {
  if (s.n < 2) throw domain_error("holonomy_factor: n >= 2");
  if (!(s.length > 0.0)) throw domain_error("holonomy_factor: length > 0");
  const int d = s.n - 1;
  if (s.rotation.rows() != d || s.rotation.cols() != d)
    throw domain_error("holonomy_factor: rotation must be (n-1)x(n-1)");
  const Eigen::MatrixXd gram =
      s.rotation.transpose() * s.rotation - Eigen::MatrixXd::Identity(d, d);
  if (gram.cwiseAbs().maxCoeff() > 1e-10)
    throw domain_error("holonomy_factor: rotation not orthogonal (1e-10)");
  const Eigen::MatrixXd M =
      Eigen::MatrixXd::Identity(d, d) -
      std::exp(-s.length) * s.rotation.transpose();
  return std::fabs(M.determinant());
}

double norm_of_length(double length) {
  if (!(length > 0.0)) throw domain_error("norm_of_length: length > 0");
  return std::exp(length);
}

void holonomy_envelope(int n, double length, double* lo, double* hi) {
  const double q = std::exp(-length);  // N^{-1}
  *lo = ipow(1.0 - q, n - 1);
  *hi = ipow(1.0 + q, n - 1);
}

Eigen::MatrixXd haar_orthogonal(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw domain_error("haar_orthogonal: dim >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  // sign correction makes the distribution exactly Haar (and covers both
  // components of O(dim))
  for (int j = 0; j < dim; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

double surface_holonomy_identity(double length) {
  return std::exp(-0.5 * length) * 2.0 * std::sinh(0.5 * length);
}

ojson HolonomyReport::to_json() const {
  ojson j;
  j["pass"] = pass;
  j["n"] = n;
  j["trials"] = trials;
  j["min_lower_margin"] = num(min_lower_margin);
  j["min_upper_margin"] = num(min_upper_margin);
  j["min_cap_margin"] = num(min_cap_margin);
  j["violations"] = violations;
  return j;
}

HolonomyReport holonomy_bounds_check(int n, long trials, std::uint64_t seed) {
  if (n < 2) throw domain_error("holonomy_bounds_check: n >= 2");
  if (trials < 1) throw domain_error("holonomy_bounds_check: trials >= 1");
  HolonomyReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.min_lower_margin = rep.min_upper_margin = rep.min_cap_margin =
      std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.01, 10.0);
  const double cap = ipow(2.0, n - 1);
  const double slack = 1e-10;
  for (long t = 0; t < trials; ++t) {
    HolonomySample s;
    s.n = n;
    s.rotation = haar_orthogonal(n - 1, rng);
    s.length = len(rng);
    const double D = holonomy_factor(s);
    double lo, hi;
    holonomy_envelope(n, s.length, &lo, &hi);
    const double ml = D - lo, mu = hi - D, mc = cap - D;
    rep.min_lower_margin = std::min(rep.min_lower_margin, ml);
    rep.min_upper_margin = std::min(rep.min_upper_margin, mu);
    rep.min_cap_margin = std::min(rep.min_cap_margin, mc);
    if (ml < -slack || mu < -slack || mc <= 0.0) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

}  // namespace tfb
