#include "tfbound/config.hpp"

#include <fstream>
#include <sstream>

#include "tfbound/errors.hpp"

namespace tfb {

namespace {

std::map<int, double> parse_dim_map(const ojson& j, const char* key) {
  std::map<int, double> out;
  if (!j.contains(key)) return out;
  const ojson& m = j.at(key);
  if (!m.is_object()) throw config_error(std::string(key) + " must be an object");
  for (auto it = m.begin(); it != m.end(); ++it) {
    // keys ending in _note are free-form provenance, skipped silently
    if (it.key().size() > 5 &&
        it.key().compare(it.key().size() - 5, 5, "_note") == 0)
      continue;
    int n = 0;
    try {
      n = std::stoi(it.key());
    } catch (...) {
      throw config_error(std::string("bad dimension key in ") + key + ": " +
                         it.key());
    }
    if (!it.value().is_number())
      throw config_error(std::string("non-numeric entry in ") + key);
    out[n] = it.value().get<double>();
  }
  return out;
}

}  // namespace

ExternalConstants Config::external() const {
  ExternalConstants e;
  e.W = W;
  e.K = K;
  e.v = v;
  return e;
}

const GroupConfig* Config::find_group(const std::string& label) const {
  for (const GroupConfig& g : groups)
    if (g.label == label) return &g;
  return nullptr;
}

Config Config::parse(const std::string& json_text) {
  Config cfg;
  if (json_text.empty()) return cfg;
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");

  if (j.contains("quadrature_tol")) {
    cfg.tol = j.at("quadrature_tol").get<double>();
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0))
      throw config_error("quadrature_tol must be in (0, 1)");
  }
  if (j.contains("external_constants")) {
    const ojson& e = j.at("external_constants");
    cfg.W = parse_dim_map(e, "W");
    cfg.K = parse_dim_map(e, "K");
    cfg.v = parse_dim_map(e, "v");
  }
  if (j.contains("enumeration")) {
    const ojson& e = j.at("enumeration");
    if (e.contains("depth")) cfg.limits.depth = e.at("depth").get<int>();
    if (e.contains("trace_cap"))
      cfg.limits.trace_cap = e.at("trace_cap").get<double>();
    if (e.contains("element_cap"))
      cfg.limits.element_cap = e.at("element_cap").get<std::size_t>();
    if (e.contains("ball_margin"))
      cfg.limits.ball_margin = e.at("ball_margin").get<double>();
    if (e.contains("conj_margin"))
      cfg.limits.conj_margin = e.at("conj_margin").get<double>();
    if (cfg.limits.depth < 1 || cfg.limits.depth > 64)
      throw config_error("enumeration.depth out of range");
    if (cfg.limits.ball_margin < 0 || cfg.limits.conj_margin < 0)
      throw config_error("enumeration margins must be non-negative");
  }
  if (j.contains("output") && j.at("output").contains("pretty"))
    cfg.pretty = j.at("output").at("pretty").get<bool>();

  if (j.contains("groups")) {
    for (const ojson& g : j.at("groups")) {
      GroupConfig gc;
      if (!g.contains("label") || !g.at("label").is_string())
        throw config_error("group needs a string label");
      gc.label = g.at("label").get<std::string>();
      if (!g.contains("generators") || !g.at("generators").is_array() ||
          g.at("generators").empty())
        throw config_error("group " + gc.label + ": generators required");
      for (const ojson& m : g.at("generators")) {
        if (!m.is_array() || m.size() != 4)
          throw config_error("group " + gc.label +
                             ": each generator is 4 numbers, row-major");
        std::array<double, 4> a{};
        for (int i = 0; i < 4; ++i) a[size_t(i)] = m.at(size_t(i)).get<double>();
        gc.generators.push_back(a);
      }
      if (g.contains("relation"))
        for (const ojson& r : g.at("relation"))
          gc.relation.push_back(r.get<int>());
      if (g.contains("volume")) gc.volume = g.at("volume").get<double>();
      cfg.groups.push_back(gc);
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace tfb
