#ifndef TFBOUND_H
#define TFBOUND_H

/* C interface to the trace-formula bound library. All functions returning
 * tfb_status set a thread-local error message retrievable via
 * tfb_last_error(). Strings returned through char** outputs are heap
 * allocated; release them with tfb_string_free(). JSON outputs are valid on
 * TFB_OK and, for verification entry points, also on TFB_VERIFY_FAILED. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfb_status {
  TFB_OK = 0,
  TFB_VERIFY_FAILED = 1,
  TFB_ERR_CONFIG = 2,
  TFB_ERR_DOMAIN = 3,
  TFB_ERR_QUADRATURE = 4,
  TFB_ERR_INCOMPLETE = 5,
  TFB_ERR_BADARG = 6,
  TFB_ERR_INTERNAL = 7
} tfb_status;

typedef struct tfb_context tfb_context;
typedef struct tfb_spectrum tfb_spectrum;

const char* tfb_version(void);
const char* tfb_last_error(void);
void tfb_string_free(char* s);

/* config_json may be NULL or "" for built-in defaults. */
tfb_status tfb_context_create(const char* config_json, tfb_context** out);
tfb_status tfb_context_create_from_file(const char* path, tfb_context** out);
void tfb_context_destroy(tfb_context* ctx);
tfb_status tfb_context_set_tol(tfb_context* ctx, double tol);

/* --- constants and bounds (JSON reports) --- */

tfb_status tfb_constant_A(tfb_context* ctx, int n, char** out_json);
tfb_status tfb_surface_kiss_constants(tfb_context* ctx, double epsilon,
                                      char** out_json);
tfb_status tfb_delta_constants(tfb_context* ctx, int n, double delta,
                               char** out_json);
tfb_status tfb_kiss_upper_bound(tfb_context* ctx, int n, double volume,
                                double systole, char** out_json);
tfb_status tfb_volume_bound(tfb_context* ctx, int n, double volume,
                            char** out_json);
/* Interval and cumulative count bounds at window half-width delta, length L;
 * the report carries all four chains. */
tfb_status tfb_count_bounds(tfb_context* ctx, int n, double delta,
                            double volume, double L, char** out_json);
double tfb_pgt_asymptotic(int n, double L);

/* --- length spectra --- */

/* depth <= 0 uses the configured default. */
tfb_status tfb_spectrum_create(tfb_context* ctx, const char* group_label,
                               double l_max, int depth, int merge_inverses,
                               tfb_spectrum** out);
void tfb_spectrum_destroy(tfb_spectrum* s);
tfb_status tfb_spectrum_summary(tfb_spectrum* s, char** out_json);
tfb_status tfb_spectrum_entries_json(tfb_spectrum* s, char** out_json);
tfb_status tfb_spectrum_csv(tfb_spectrum* s, char** out_csv);
tfb_status tfb_spectrum_systole(tfb_spectrum* s, double* out);
tfb_status tfb_spectrum_count(tfb_spectrum* s, double lo, double hi,
                              int primitive_only, long* out);
int tfb_spectrum_complete(tfb_spectrum* s); /* 1 = certified up to l_max */

/* Empirical counts vs bound chains; TFB_VERIFY_FAILED on any violation. */
tfb_status tfb_validate_bounds(tfb_context* ctx, tfb_spectrum* s, double delta,
                               char** out_json);

/* suite: admissibility | fourier | signs | holonomy | li | bounds | all.
 * group_label may be NULL; trials/seed <= 0 use defaults. */
tfb_status tfb_verify(tfb_context* ctx, const char* suite,
                      const char* group_label, long trials,
                      unsigned long long seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TFBOUND_H */
