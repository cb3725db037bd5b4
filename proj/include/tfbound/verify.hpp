#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfbound/config.hpp"
#include "tfbound/report.hpp"

namespace tfb {

struct SuiteResult {
  std::string name;
  bool pass = false;
  ojson detail;
};

struct VerifyOptions {
  long trials = 10000;          // per dimension, holonomy suite
  std::uint64_t seed = 20260815;
  std::string group_label;      // bounds suite; empty = first configured group
  double l_max = 8.0;
  double delta = 0.5;
};

// Suites: admissibility, fourier, signs, holonomy, li, bounds, all.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const Config& cfg,
                      const VerifyOptions& opts = {});
ojson run_suites(const std::vector<std::string>& names, const Config& cfg,
                 const VerifyOptions& opts, bool* all_pass);

}  // namespace tfb
