/* wocsim — mean-field opinion dynamics simulator, C API.
 *
 * All entry points are thread-safe; handles are not shared between
 * threads without external synchronization. Every function returning
 * wocsim_status sets a thread-local diagnostic readable through
 * wocsim_last_error() when it fails. Out-parameters are written only on
 * WOCSIM_OK.
 */
#ifndef WOCSIM_H
#define WOCSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__) && __GNUC__ >= 4
#define WOCSIM_API __attribute__((visibility("default")))
#else
#define WOCSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wocsim_status {
    WOCSIM_OK = 0,
    WOCSIM_E_INVALID_ARGUMENT = 1, /* parameter or invariant violation */
    WOCSIM_E_PARSE = 2,            /* config text rejected */
    WOCSIM_E_POSITIVITY = 3,       /* an opinion left the positive domain */
    WOCSIM_E_IO = 4,               /* file system failure */
    WOCSIM_E_INTERNAL = 5
} wocsim_status;

/* Library version string, e.g. "0.1.0". */
WOCSIM_API const char* wocsim_version(void);

/* Stable name for a status code, e.g. "parse". */
WOCSIM_API const char* wocsim_status_name(wocsim_status status);

/* Last failure diagnostic on this thread; empty string if none. The
 * pointer stays valid until the next failing call on the same thread. */
WOCSIM_API const char* wocsim_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration                                                       */

typedef struct wocsim_config wocsim_config;

/* Parse a flat key=value document (see README for the schema). */
WOCSIM_API wocsim_status wocsim_config_parse_text(const char* text,
                                                  wocsim_config** out);
WOCSIM_API wocsim_status wocsim_config_parse_file(const char* path,
                                                  wocsim_config** out);
WOCSIM_API void wocsim_config_free(wocsim_config* config);

/* "simulate", "sweep" or "sample". */
WOCSIM_API const char* wocsim_config_mode(const wocsim_config* config);
/* Output path the config resolves to (key `output` or the mode default). */
WOCSIM_API const char* wocsim_config_output(const wocsim_config* config);

/* Override the population seed (CLI --seed). */
WOCSIM_API wocsim_status wocsim_config_set_seed(wocsim_config* config,
                                                uint64_t seed);
/* Override the output path (CLI --out). */
WOCSIM_API wocsim_status wocsim_config_set_output(wocsim_config* config,
                                                  const char* path);

/* Render the config back to key=value text. Free with
 * wocsim_string_free. */
WOCSIM_API wocsim_status wocsim_config_format(const wocsim_config* config,
                                              char** text_out);
WOCSIM_API void wocsim_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Single simulation                                                   */

typedef struct wocsim_trajectory wocsim_trajectory;

typedef struct wocsim_metrics_row {
    double time;
    double collective_error;  /* squared log-space deviation from truth */
    double group_diversity;   /* population variance of log-opinions */
    int32_t wisdom_indicator; /* central bracketing depth, 0..N/2 */
    double arithmetic_mean;
    double geometric_mean;
} wocsim_metrics_row;

/* Run a mode=simulate config. */
WOCSIM_API wocsim_status wocsim_simulate(const wocsim_config* config,
                                         wocsim_trajectory** out);
WOCSIM_API size_t wocsim_trajectory_size(const wocsim_trajectory* trajectory);
WOCSIM_API wocsim_status wocsim_trajectory_row(
    const wocsim_trajectory* trajectory, size_t index,
    wocsim_metrics_row* out);
/* Atomic write (temp file + rename): no partial file on failure. */
WOCSIM_API wocsim_status wocsim_trajectory_write_csv(
    const wocsim_trajectory* trajectory, const char* path);
WOCSIM_API void wocsim_trajectory_free(wocsim_trajectory* trajectory);

/* ------------------------------------------------------------------ */
/* Parameter sweep                                                     */

typedef struct wocsim_sweep_result wocsim_sweep_result;

typedef struct wocsim_sweep_cell {
    double alpha;
    double beta;
    double final_error_mean;
    double final_error_sd;
    double final_diversity_mean;
    double final_wisdom_mean;
    int32_t replicates; /* runs aggregated; 0 for a failed cell */
    int32_t failed;     /* nonzero if any replicate hit an error */
} wocsim_sweep_cell;

/* Run a mode=sweep config with `workers` concurrent cell evaluations
 * (workers >= 1). Results are identical for every worker count. */
WOCSIM_API wocsim_status wocsim_sweep_run(const wocsim_config* config,
                                          int workers,
                                          wocsim_sweep_result** out);
/* Cells in row-major (beta-fastest) order. */
WOCSIM_API size_t wocsim_sweep_size(const wocsim_sweep_result* result);
WOCSIM_API wocsim_status wocsim_sweep_cell_at(
    const wocsim_sweep_result* result, size_t index, wocsim_sweep_cell* out);
WOCSIM_API wocsim_status wocsim_sweep_write_csv(
    const wocsim_sweep_result* result, const char* path);
WOCSIM_API void wocsim_sweep_result_free(wocsim_sweep_result* result);

/* ------------------------------------------------------------------ */
/* Population audit                                                    */

/* Write the initial population of any config as CSV (one opinion per
 * line). Accepts every mode. */
WOCSIM_API wocsim_status wocsim_sample_write_csv(const wocsim_config* config,
                                                 const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WOCSIM_H */
