#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tfbound/bounds.hpp"
#include "tfbound/report.hpp"

namespace tfb {

struct GroupConfig {
  std::string label;
  std::vector<std::array<double, 4>> generators;  // row-major 2x2, det ~ 1
  std::vector<int> relation;  // signed 1-based generator indices, product = +-I
  double volume = 0.0;        // co-area; 0 = unknown
};

struct EnumerationLimits {
  int depth = 12;              // max word length
  double trace_cap = 0.0;      // 0 = auto: 2 cosh(l_max/2) + rounding slack
  std::size_t element_cap = 4000000;
  double ball_margin = 5.0;    // extra displacement beyond l_max for the ball
  double conj_margin = 5.0;    // extra displacement for conjugator searches
};

struct Config {
  double tol = 1e-9;
  std::map<int, double> W, K, v;
  std::vector<GroupConfig> groups;
  EnumerationLimits limits;
  bool pretty = true;

  ExternalConstants external() const;  // merges built-in defaults (v[2] = 4pi)
  const GroupConfig* find_group(const std::string& label) const;

  static Config parse(const std::string& json_text);  // throws config_error
  static Config load(const std::string& path);
};

}  // namespace tfb
