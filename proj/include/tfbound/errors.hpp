#pragma once

#include <stdexcept>
#include <string>

namespace tfb {

// Error taxonomy. The C API maps each type to a status code; the CLI maps all
// of them to exit code 2. Failed verifications are reports, not exceptions.

class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration was asked for data beyond its certified horizon.
class incomplete_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double best, double err)
      : std::runtime_error(what), best_value(best), error_estimate(err) {}
  double best_value;
  double error_estimate;
};

}  // namespace tfb
