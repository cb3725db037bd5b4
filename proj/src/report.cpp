#include "tfbound/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tfb {

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

ojson num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

std::string dump_report(const ojson& doc, bool pretty) {
  return pretty ? doc.dump(2) + "\n" : doc.dump() + "\n";
}

}  // namespace tfb
