#include "tfbound/tfbound.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "tfbound/bounds.hpp"
#include "tfbound/config.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/fuchsian.hpp"
#include "tfbound/report.hpp"
#include "tfbound/verify.hpp"

struct tfb_context {
  tfb::Config cfg;
};

struct tfb_spectrum {
  tfb::Spectrum s;
  bool pretty = true;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

tfb_status fail(tfb_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

void set_json(char** out, const tfb::ojson& j, bool pretty) {
  if (out) *out = dup_string(tfb::dump_report(j, pretty));
}

template <typename F>
tfb_status wrap(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const tfb::config_error& e) {
    return fail(TFB_ERR_CONFIG, e.what());
  } catch (const tfb::incomplete_error& e) {
    return fail(TFB_ERR_INCOMPLETE, e.what());
  } catch (const tfb::quadrature_error& e) {
    return fail(TFB_ERR_QUADRATURE, e.what());
  } catch (const tfb::domain_error& e) {
    return fail(TFB_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(TFB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TFB_ERR_INTERNAL, "unknown error");
  }
}

std::vector<double> default_lengths(double l_max) {
  std::vector<double> Ls;
  for (int L = int(std::ceil(l_max / 2.0)); L <= int(l_max); ++L)
    Ls.push_back(double(L));
  if (Ls.empty()) Ls.push_back(l_max);
  return Ls;
}

}  // namespace

extern "C" {

const char* tfb_version(void) { return "0.1.0"; }

const char* tfb_last_error(void) { return g_last_error.c_str(); }

void tfb_string_free(char* s) { std::free(s); }

tfb_status tfb_context_create(const char* config_json, tfb_context** out) {
  if (!out) return fail(TFB_ERR_BADARG, "out == NULL");
  *out = nullptr;
  return wrap([&]() {
    auto ctx = new tfb_context;
    try {
      ctx->cfg = tfb::Config::parse(config_json ? config_json : "");
    } catch (...) {
      delete ctx;
      throw;
    }
    *out = ctx;
    return TFB_OK;
  });
}

tfb_status tfb_context_create_from_file(const char* path, tfb_context** out) {
  if (!out) return fail(TFB_ERR_BADARG, "out == NULL");
  if (!path) return fail(TFB_ERR_BADARG, "path == NULL");
  *out = nullptr;
  return wrap([&]() {
    auto ctx = new tfb_context;
    try {
      ctx->cfg = tfb::Config::load(path);
    } catch (...) {
      delete ctx;
      throw;
    }
    *out = ctx;
    return TFB_OK;
  });
}

void tfb_context_destroy(tfb_context* ctx) { delete ctx; }

tfb_status tfb_context_set_tol(tfb_context* ctx, double tol) {
  if (!ctx) return fail(TFB_ERR_BADARG, "ctx == NULL");
  if (!(tol > 0.0) || tol >= 1.0)
    return fail(TFB_ERR_BADARG, "tol must be in (0, 1)");
  ctx->cfg.tol = tol;
  return TFB_OK;
}

tfb_status tfb_constant_A(tfb_context* ctx, int n, char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(out_json, tfb::constant_A(n, ctx->cfg.tol).to_json(),
             ctx->cfg.pretty);
    return TFB_OK;
  });
}

tfb_status tfb_surface_kiss_constants(tfb_context* ctx, double epsilon,
                                      char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(out_json,
             tfb::surface_kiss_constants(epsilon, ctx->cfg.tol).to_json(),
             ctx->cfg.pretty);
    return TFB_OK;
  });
}

tfb_status tfb_delta_constants(tfb_context* ctx, int n, double delta,
                               char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(out_json,
             tfb::delta_constants(n, delta, ctx->cfg.external(), ctx->cfg.tol)
                 .to_json(),
             ctx->cfg.pretty);
    return TFB_OK;
  });
}

tfb_status tfb_kiss_upper_bound(tfb_context* ctx, int n, double volume,
                                double systole, char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    tfb::ManifoldParams p;
    p.n = n;
    p.vol = volume;
    p.sys = systole;
    set_json(out_json,
             tfb::kiss_upper_bound(p, ctx->cfg.external(), ctx->cfg.tol)
                 .to_json(),
             ctx->cfg.pretty);
    return TFB_OK;
  });
}

tfb_status tfb_volume_bound(tfb_context* ctx, int n, double volume,
                            char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(
        out_json,
        tfb::volume_kiss_bound(n, volume, ctx->cfg.external(), ctx->cfg.tol)
            .to_json(),
        ctx->cfg.pretty);
    return TFB_OK;
  });
}

tfb_status tfb_count_bounds(tfb_context* ctx, int n, double delta,
                            double volume, double L, char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    const tfb::ExternalConstants ext = ctx->cfg.external();
    tfb::ojson j;
    j["operation"] = "count_bounds";
    j["inputs"] = {{"n", n},
                   {"delta", tfb::num(delta)},
                   {"volume", tfb::num(volume)},
                   {"L", tfb::num(L)}};
    j["interval_upper"] =
        tfb::interval_count_upper(n, delta, volume, L, ext, ctx->cfg.tol)
            .to_json();
    j["interval_lower"] =
        tfb::interval_count_lower(n, delta, volume, L, ext, ctx->cfg.tol)
            .to_json();
    j["cumulative_upper"] =
        tfb::cumulative_upper(n, delta, volume, L, ext, ctx->cfg.tol).to_json();
    j["cumulative_lower"] =
        tfb::cumulative_lower(n, delta, volume, L, ext, ctx->cfg.tol).to_json();
    j["asymptotic"] = tfb::num(tfb::pgt_asymptotic(n, L));
    set_json(out_json, j, ctx->cfg.pretty);
    return TFB_OK;
  });
}

double tfb_pgt_asymptotic(int n, double L) {
  try {
    return tfb::pgt_asymptotic(n, L);
  } catch (...) {
    return std::nan("");
  }
}

tfb_status tfb_spectrum_create(tfb_context* ctx, const char* group_label,
                               double l_max, int depth, int merge_inverses,
                               tfb_spectrum** out) {
  if (!ctx || !out) return fail(TFB_ERR_BADARG, "NULL argument");
  if (!group_label) return fail(TFB_ERR_BADARG, "group_label == NULL");
  *out = nullptr;
  return wrap([&]() {
    const tfb::GroupConfig* gc = ctx->cfg.find_group(group_label);
    if (!gc)
      throw tfb::config_error(std::string("unknown group '") + group_label +
                              "'");
    const tfb::FuchsianGroup g = tfb::load_group(*gc);
    tfb::SpectrumOptions so;
    so.limits = ctx->cfg.limits;
    so.merge_inverses = merge_inverses != 0;
    const int d = depth > 0 ? depth : ctx->cfg.limits.depth;
    auto sp = new tfb_spectrum;
    try {
      sp->s = tfb::length_spectrum(g, l_max, d, so);
      sp->pretty = ctx->cfg.pretty;
    } catch (...) {
      delete sp;
      throw;
    }
    *out = sp;
    return TFB_OK;
  });
}

void tfb_spectrum_destroy(tfb_spectrum* s) { delete s; }

tfb_status tfb_spectrum_summary(tfb_spectrum* s, char** out_json) {
  if (!s || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(out_json, tfb::spectrum_summary(s->s), s->pretty);
    return TFB_OK;
  });
}

tfb_status tfb_spectrum_entries_json(tfb_spectrum* s, char** out_json) {
  if (!s || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    set_json(out_json, tfb::spectrum_json(s->s), s->pretty);
    return TFB_OK;
  });
}

tfb_status tfb_spectrum_csv(tfb_spectrum* s, char** out_csv) {
  if (!s || !out_csv) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    *out_csv = dup_string(tfb::spectrum_csv(s->s));
    return TFB_OK;
  });
}

tfb_status tfb_spectrum_systole(tfb_spectrum* s, double* out) {
  if (!s || !out) return fail(TFB_ERR_BADARG, "NULL argument");
  *out = s->s.systole;
  return TFB_OK;
}

tfb_status tfb_spectrum_count(tfb_spectrum* s, double lo, double hi,
                              int primitive_only, long* out) {
  if (!s || !out) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    *out = tfb::empirical_count(s->s, lo, hi, primitive_only != 0);
    return TFB_OK;
  });
}

int tfb_spectrum_complete(tfb_spectrum* s) {
  return s && s->s.complete() ? 1 : 0;
}

tfb_status tfb_validate_bounds(tfb_context* ctx, tfb_spectrum* s, double delta,
                               char** out_json) {
  if (!ctx || !s || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  return wrap([&]() {
    const tfb::ojson v =
        tfb::validate_bounds(s->s, ctx->cfg.external(), delta,
                             default_lengths(s->s.l_max), ctx->cfg.tol);
    set_json(out_json, v, ctx->cfg.pretty);
    if (!v.at("pass").get<bool>())
      return fail(TFB_VERIFY_FAILED, "bound validation failed");
    return TFB_OK;
  });
}

tfb_status tfb_verify(tfb_context* ctx, const char* suite,
                      const char* group_label, long trials,
                      unsigned long long seed, char** out_json) {
  if (!ctx || !out_json) return fail(TFB_ERR_BADARG, "NULL argument");
  if (!suite) return fail(TFB_ERR_BADARG, "suite == NULL");
  return wrap([&]() {
    tfb::VerifyOptions opts;
    if (group_label) opts.group_label = group_label;
    if (trials > 0) opts.trials = trials;
    if (seed > 0) opts.seed = seed;
    bool pass = false;
    const tfb::ojson j = tfb::run_suites({suite}, ctx->cfg, opts, &pass);
    set_json(out_json, j, ctx->cfg.pretty);
    if (!pass) return fail(TFB_VERIFY_FAILED, "verification suite failed");
    return TFB_OK;
  });
}

}  // extern "C"
