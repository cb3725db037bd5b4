#pragma once

#include <string>

#include <json.hpp>

namespace tfb {

using ojson = nlohmann::ordered_json;

// All floating-point values are rounded to 12 significant digits before
// serialization so reports are byte-stable across runs and optimization
// levels.
double round12(double x);
ojson num(double x);  // round12, mapping non-finite values to strings

std::string dump_report(const ojson& doc, bool pretty = true);

}  // namespace tfb
