#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfbound/tfbound.h"

using ojson = nlohmann::ordered_json;

namespace {

int rc_of(tfb_status st) {
  if (st == TFB_OK) return 0;
  if (st == TFB_VERIFY_FAILED) return 1;
  return 2;
}

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "tfbound: " << msg << "\n";
  std::exit(2);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  tfb_string_free(s);
  return out;
}

ojson parse_payload(const std::string& s) { return ojson::parse(s); }

struct Emitter {
  std::string out_path;
  bool compact = false;

  void emit(const ojson& doc) const {
    const std::string text = (compact ? doc.dump() : doc.dump(2)) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path);
      if (!f) die("cannot write " + out_path);
      f << text;
    }
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) die("cannot write " + path);
  f << text;
}

double parse_epsilon(const std::string& s) {
  if (s == "2asinh1") return 2.0 * std::asinh(1.0);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (!end || *end != '\0' || !(v > 0.0))
    die("--epsilon expects a positive number or '2asinh1', got '" + s + "'");
  return v;
}

// CONFIG failures degrade to an availability stub; anything else is fatal
ojson sub_report(tfb_status st, char* json, const std::string& what) {
  if (st == TFB_OK) return parse_payload(take(json));
  if (st == TFB_ERR_CONFIG) {
    return ojson{{"available", false}, {"reason", tfb_last_error()}};
  }
  die(what + ": " + tfb_last_error());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-formula bounds for closed hyperbolic manifolds"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name

  std::string config_path, out_path;
  double tol = 0.0;
  bool compact = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--tol", tol, "quadrature tolerance override");
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_flag("--compact", compact, "single-line JSON");

  auto* c_const = app.add_subcommand("constants", "dimensional constants");
  int cn = 2;
  std::string ceps;
  double cdelta = 0.0;
  c_const->add_option("--n", cn, "dimension")->required();
  c_const->add_option("--epsilon", ceps,
                      "surface constants at this bump width (n = 2; accepts "
                      "'2asinh1')");
  auto* copt_delta =
      c_const->add_option("--delta", cdelta, "counting-chain constants");

  auto* c_bound = app.add_subcommand("bound", "kissing and volume bounds");
  int bn = 2;
  double bvol = 0.0, bsys = 0.0, bdelta = 0.0, bL = 0.0;
  c_bound->add_option("--n", bn, "dimension")->required();
  c_bound->add_option("--vol", bvol, "volume")->required();
  c_bound->add_option("--sys", bsys, "systole")->required();
  auto* bopt_delta = c_bound->add_option("--delta", bdelta, "window half-width");
  auto* bopt_L = c_bound->add_option("--L", bL, "target length");
  bopt_delta->needs(bopt_L);
  bopt_L->needs(bopt_delta);

  auto* c_spec = app.add_subcommand("spectrum", "length spectrum of a group");
  std::string sgroup, scsv, sjson;
  double slmax = 6.0;
  int sdepth = 0;
  bool svalidate = false, smerge = false;
  c_spec->add_option("--group", sgroup, "group label")->required();
  c_spec->add_option("--lmax", slmax, "length cutoff")->required();
  c_spec->add_option("--depth", sdepth, "max word length (0 = configured)");
  c_spec->add_option("--csv", scsv, "write spectrum CSV here");
  c_spec->add_option("--json", sjson, "write full spectrum JSON here");
  c_spec->add_flag("--validate", svalidate, "check counts against the bounds");
  c_spec->add_flag("--merge-inverses", smerge, "unoriented multiplicities");

  auto* c_verify = app.add_subcommand("verify", "verification suites");
  std::string vsuite = "all", vgroup;
  long vtrials = 0;
  unsigned long long vseed = 0;
  c_verify->add_option("--suite", vsuite,
                       "admissibility|fourier|signs|holonomy|li|bounds|all");
  c_verify->add_option("--group", vgroup, "group for the bounds suite");
  c_verify->add_option("--trials", vtrials, "holonomy trials per dimension");
  c_verify->add_option("--seed", vseed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (config_path.empty()) {
    if (const char* env = std::getenv("TFBOUND_CONFIG")) config_path = env;
  }
#ifdef TFBOUND_DEFAULT_CONFIG
  if (config_path.empty()) {
    std::ifstream probe(TFBOUND_DEFAULT_CONFIG);
    if (probe.good()) config_path = TFBOUND_DEFAULT_CONFIG;
  }
#endif

  tfb_context* ctx = nullptr;
  const tfb_status cst =
      config_path.empty() ? tfb_context_create("", &ctx)
                          : tfb_context_create_from_file(config_path.c_str(), &ctx);
  if (cst != TFB_OK) die(std::string("config: ") + tfb_last_error());
  if (tol > 0.0 && tfb_context_set_tol(ctx, tol) != TFB_OK)
    die(tfb_last_error());

  Emitter em{out_path, compact};
  int rc = 0;

  if (app.got_subcommand(c_const)) {
    ojson doc;
    doc["operation"] = "constants";
    doc["n"] = cn;
    char* js = nullptr;
    const tfb_status ast = tfb_constant_A(ctx, cn, &js);
    doc["A"] = sub_report(ast, js, "constant A");
    if (!ceps.empty()) {
      if (cn != 2) die("--epsilon applies to --n 2 only");
      const double eps = parse_epsilon(ceps);
      js = nullptr;
      const tfb_status st = tfb_surface_kiss_constants(ctx, eps, &js);
      if (st != TFB_OK && st != TFB_ERR_CONFIG)
        die(std::string("surface constants: ") + tfb_last_error());
      doc["surface"] = sub_report(st, js, "surface constants");
    }
    if (copt_delta->count() > 0) {
      js = nullptr;
      const tfb_status dst = tfb_delta_constants(ctx, cn, cdelta, &js);
      doc["delta_constants"] = sub_report(dst, js, "delta constants");
    }
    em.emit(doc);
  } else if (app.got_subcommand(c_bound)) {
    ojson doc;
    doc["operation"] = "bound";
    doc["inputs"] = {{"n", bn}, {"vol", bvol}, {"sys", bsys}};
    char* js = nullptr;
    tfb_status st = tfb_kiss_upper_bound(ctx, bn, bvol, bsys, &js);
    if (st != TFB_OK && st != TFB_ERR_CONFIG)
      die(std::string("kiss bound: ") + tfb_last_error());
    doc["kiss_upper"] = sub_report(st, js, "kiss bound");
    js = nullptr;
    st = tfb_volume_bound(ctx, bn, bvol, &js);
    if (st != TFB_OK && st != TFB_ERR_CONFIG)
      die(std::string("volume bound: ") + tfb_last_error());
    doc["volume_bound"] = sub_report(st, js, "volume bound");
    if (bopt_delta->count() > 0) {
      js = nullptr;
      st = tfb_count_bounds(ctx, bn, bdelta, bvol, bL, &js);
      if (st != TFB_OK && st != TFB_ERR_CONFIG)
        die(std::string("count bounds: ") + tfb_last_error());
      doc["count_bounds"] = sub_report(st, js, "count bounds");
    }
    em.emit(doc);
  } else if (app.got_subcommand(c_spec)) {
    tfb_spectrum* sp = nullptr;
    if (tfb_spectrum_create(ctx, sgroup.c_str(), slmax, sdepth, smerge ? 1 : 0,
                            &sp) != TFB_OK)
      die(std::string("spectrum: ") + tfb_last_error());
    char* js = nullptr;
    if (tfb_spectrum_summary(sp, &js) != TFB_OK)
      die(std::string("spectrum summary: ") + tfb_last_error());
    ojson doc = parse_payload(take(js));
    if (!scsv.empty()) {
      js = nullptr;
      if (tfb_spectrum_csv(sp, &js) != TFB_OK)
        die(std::string("spectrum csv: ") + tfb_last_error());
      write_file(scsv, take(js));
    }
    if (!sjson.empty()) {
      js = nullptr;
      if (tfb_spectrum_entries_json(sp, &js) != TFB_OK)
        die(std::string("spectrum json: ") + tfb_last_error());
      write_file(sjson, take(js));
    }
    if (!tfb_spectrum_complete(sp)) {
      em.emit(doc);
      std::cerr << "tfbound: enumeration incomplete below l_max (horizon "
                << doc.value("horizon", ojson()).dump()
                << "); raise --depth or the element cap\n";
      tfb_spectrum_destroy(sp);
      tfb_context_destroy(ctx);
      return 2;
    }
    if (svalidate) {
      js = nullptr;
      const tfb_status st = tfb_validate_bounds(ctx, sp, 0.5, &js);
      if (st != TFB_OK && st != TFB_VERIFY_FAILED)
        die(std::string("validate: ") + tfb_last_error());
      doc["validation"] = parse_payload(take(js));
      rc = rc_of(st);
    }
    em.emit(doc);
    tfb_spectrum_destroy(sp);
  } else if (app.got_subcommand(c_verify)) {
    char* js = nullptr;
    const tfb_status st =
        tfb_verify(ctx, vsuite.c_str(), vgroup.empty() ? nullptr : vgroup.c_str(),
                   vtrials, vseed, &js);
    if (st != TFB_OK && st != TFB_VERIFY_FAILED)
      die(std::string("verify: ") + tfb_last_error());
    em.emit(parse_payload(take(js)));
    rc = rc_of(st);
  }

  tfb_context_destroy(ctx);
  return rc;
}
