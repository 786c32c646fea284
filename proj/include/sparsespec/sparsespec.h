/* C interface to the sparsespec library. */
#ifndef SPARSESPEC_H
#define SPARSESPEC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SPARSESPEC_BUILDING_LIBRARY)
#    define SS_API __declspec(dllexport)
#  else
#    define SS_API __declspec(dllimport)
#  endif
#else
#  define SS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
    SS_OK = 0,
    SS_ERR_ARGUMENT = 1,
    SS_ERR_RANGE = 2,
    SS_ERR_DOMAIN = 3,
    SS_ERR_OVERFLOW = 4,
    SS_ERR_CONFIG = 5,
    SS_ERR_NUMERIC = 6,
    SS_ERR_INTERNAL = 7
} ss_status;

typedef struct ss_config ss_config;
typedef struct ss_system ss_system;

typedef struct ss_a_estimate {
    double value;
    size_t argmin;
    int infinite;
    int diverging;
    double tail_growth_exponent;
    double last_value;
} ss_a_estimate;

SS_API const char* ss_version(void);

/* Message of the last failing call on this thread; "" when none. */
SS_API const char* ss_last_error(void);

/* Frees strings returned through char** out-parameters. */
SS_API void ss_string_free(char* s);

SS_API ss_status ss_config_parse(const char* json, ss_config** out);
SS_API ss_status ss_config_serialize(const ss_config* config, char** out);
SS_API ss_status ss_config_system(const ss_config* config, ss_system** out);
/* output.path from the config; "" when unset. Owned by the config. */
SS_API const char* ss_config_output_path(const ss_config* config);
SS_API void ss_config_free(ss_config* config);

/* Builds a system from a config document's "system" object alone. */
SS_API ss_status ss_system_parse(const char* json, ss_system** out);
SS_API void ss_system_free(ss_system* system);

/* 0 for delta, 1 for delta prime. */
SS_API int ss_system_kind(const ss_system* system);
SS_API size_t ss_system_max_index(const ss_system* system);

SS_API ss_status ss_lattice_position(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_lattice_gap(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_lattice_log_gap(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_lattice_sparseness_ratio(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_strength(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_a_ratio(const ss_system* system, size_t n, double* out);
SS_API ss_status ss_estimate_a(const ss_system* system, size_t window_start, size_t window_end,
                               ss_a_estimate* out);

SS_API ss_status ss_growth_log_A(const ss_system* system, double lambda, size_t n, double* out);
SS_API ss_status ss_growth_dalembert_ratio(const ss_system* system, double lambda0, size_t n, double* out);

/* Writes (psi, psi') for n = 0..N into out[2n], out[2n+1]; out holds 2(N+1) doubles. */
SS_API ss_status ss_transfer_propagate(const ss_system* system, double lambda, double psi0,
                                       double dpsi0, size_t N, double* out);

/* Eigenvalues of the truncation to [0, x_N] in [lambda_min, lambda_max].
   On success *count holds the number found; at most `capacity` are written.
   *unresolved is set when roots were likely missed. */
SS_API ss_status ss_spectrum_truncated_eigenvalues(const ss_system* system, size_t N, double lambda_min,
                                                   double lambda_max, size_t grid_intervals, double tol,
                                                   double* values, size_t capacity, size_t* count,
                                                   int* unresolved);

/* Runs a CLI command ("classify", "growth", "eigs", "propagate", "avalue").
   `format` may be NULL, "csv" or "json". */
SS_API ss_status ss_run_command(const char* command, const ss_config* config, const char* format,
                                char** out, int* numeric_failure);

#ifdef __cplusplus
}
#endif

#endif
