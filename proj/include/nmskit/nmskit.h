/* C interface to the nmskit library. All strings are UTF-8 and owned by the
 * library unless noted; strings returned through out-parameters must be
 * released with nmskit_string_free. */
#ifndef NMSKIT_H
#define NMSKIT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(NMSKIT_BUILDING_LIBRARY)
#define NMSKIT_API __attribute__((visibility("default")))
#else
#define NMSKIT_API
#endif

/* Values match nmskit::ErrorCode. */
typedef enum nmskit_status {
  NMSKIT_OK = 0,
  NMSKIT_INVALID_ARGUMENT = 1,
  NMSKIT_CONFIG = 2,
  NMSKIT_DOMAIN = 3,
  NMSKIT_PRECONDITION = 4,
  NMSKIT_NO_SOLUTION = 5,
  NMSKIT_SEARCH_FAILURE = 6,
  NMSKIT_CAPACITY = 7,
  NMSKIT_INTERNAL = 99
} nmskit_status;

typedef struct nmskit_space nmskit_space;

NMSKIT_API const char* nmskit_version(void);

/* Message for the last failing call on this thread; "" if none. */
NMSKIT_API const char* nmskit_last_error(void);

NMSKIT_API void nmskit_string_free(char* s);

/* Built-in kernels by name ("min", "product", "lukasiewicz", "max", "probsum"). */
NMSKIT_API nmskit_status nmskit_tnorm_apply(const char* name, double s, double t, double* out);
NMSKIT_API nmskit_status nmskit_tconorm_apply(const char* name, double s, double t, double* out);
NMSKIT_API nmskit_status nmskit_tnorm_residual(const char* name, double e1, double e2, double* out);
NMSKIT_API nmskit_status nmskit_tconorm_residual(const char* name, double e1, double e2, double* out);

/* Space from its JSON description (same format as the "space" config key). */
NMSKIT_API nmskit_status nmskit_space_from_json(const char* json, nmskit_space** out);
NMSKIT_API void nmskit_space_free(nmskit_space* space);

/* Points are JSON literals: a label string, a natural number, a number or an
 * array of numbers. out receives G, B, Y. */
NMSKIT_API nmskit_status nmskit_space_evaluate(const nmskit_space* space, const char* a, const char* b,
                                               double lambda, double out[3]);

/* Runs the axiom checker with its defaults, overridden by the optional
 * options_json ({"samples", "seed", "lambda_grid", "tol", ...}). passed is set
 * to 1 when no axiom fails; report_json (optional) receives the report. */
NMSKIT_API nmskit_status nmskit_space_check_axioms(const nmskit_space* space, const char* options_json,
                                                   int* passed, char** report_json);

/* Runs a CLI command on a JSON config. Always fills exit_code (0 verified,
 * 1 finding, 2 usage/config); report_json and text are optional. Returns
 * NMSKIT_OK unless the arguments themselves are unusable. */
NMSKIT_API nmskit_status nmskit_run(const char* command, const char* config_json, int timing, int* exit_code,
                                    char** report_json, char** text);

#ifdef __cplusplus
}
#endif

#endif
