/* Compile-only check: the public header must be consumable from plain C11. */
#include "tfbound/tfbound.h"

typedef const char* (*str_fn)(void);

const void* tfb_api_surface[] = {
    (const void*)(str_fn)tfb_version,
    (const void*)(str_fn)tfb_last_error,
    (const void*)tfb_string_free,
    (const void*)tfb_context_create,
    (const void*)tfb_context_create_from_file,
    (const void*)tfb_context_destroy,
    (const void*)tfb_context_set_tol,
    (const void*)tfb_constant_A,
    (const void*)tfb_surface_kiss_constants,
    (const void*)tfb_delta_constants,
    (const void*)tfb_kiss_upper_bound,
    (const void*)tfb_volume_bound,
    (const void*)tfb_count_bounds,
    (const void*)tfb_pgt_asymptotic,
    (const void*)tfb_spectrum_create,
    (const void*)tfb_spectrum_destroy,
    (const void*)tfb_spectrum_summary,
    (const void*)tfb_spectrum_entries_json,
    (const void*)tfb_spectrum_csv,
    (const void*)tfb_spectrum_systole,
    (const void*)tfb_spectrum_count,
    (const void*)tfb_spectrum_complete,
    (const void*)tfb_validate_bounds,
    (const void*)tfb_verify,
};

int tfb_api_surface_size(void);
int tfb_api_surface_size(void) {
  return (int)(sizeof(tfb_api_surface) / sizeof(tfb_api_surface[0]));
}
