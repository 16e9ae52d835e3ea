#ifndef RYDENT_H
#define RYDENT_H

/* C interface to the rydent library: Rydberg-ladder ground states and
 * filtered mutual-information entanglement estimates.
 *
 * Every function that can fail returns a rydent_status; the matching
 * human-readable message is available from rydent_last_error() until the
 * next call on the same thread. Status values double as process exit codes.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rydent_status {
    RYDENT_OK = 0,
    RYDENT_ERROR_INTERNAL = 1,   /* bug or resource exhaustion */
    RYDENT_ERROR_VALIDATION = 2, /* bad arguments, config, or input files */
    RYDENT_ERROR_CAPABILITY = 3, /* request exceeds what exact methods allow */
    RYDENT_ERROR_NUMERICAL = 4   /* solver or fit did not converge */
} rydent_status;

const char* rydent_version(void);

/* Message from the most recent failing call on this thread. Never NULL;
 * empty after a success. */
const char* rydent_last_error(void);

/* ---- configuration ----------------------------------------------------- */

typedef struct rydent_config rydent_config;

rydent_config* rydent_config_create(void); /* defaults; NULL on alloc failure */
int rydent_config_set(rydent_config* cfg, const char* key, const char* value);
int rydent_config_load_file(rydent_config* cfg, const char* path);
void rydent_config_destroy(rydent_config* cfg);

/* ---- command drivers ---------------------------------------------------- */

/* On success *out_json receives a NUL-terminated JSON document describing
 * the run (malloc'd; release with rydent_string_free). Configured
 * output_json / output_csv files are written atomically as a side effect. */
int rydent_run_ground_state(const rydent_config* cfg, char** out_json);
int rydent_run_estimate(const rydent_config* cfg, char** out_json);
int rydent_run_sweep_volume(const rydent_config* cfg, const int* rungs, size_t n_rungs,
                            char** out_json);
int rydent_run_sweep_spacing(const rydent_config* cfg, const double* rb_values, size_t n_values,
                             char** out_json);
int rydent_run_sweep_bipartition(const rydent_config* cfg, const int* sizes, size_t n_sizes,
                                 char** out_json);
int rydent_run_phase_scan(const rydent_config* cfg, const double* rb_grid, size_t n_rb,
                          const double* delta_grid, size_t n_delta, char** out_json);
/* format: "lines" (one bitstring per line) or "csv" (bitstring,count) */
int rydent_run_ingest(const rydent_config* cfg, const char* input_path, const char* format,
                      char** out_json);
int rydent_run_sample(const rydent_config* cfg, const char* output_path, const char* format,
                      char** out_json);

void rydent_string_free(char* s);

/* ---- state handles ------------------------------------------------------ */

typedef struct rydent_state rydent_state;

int rydent_state_solve(const rydent_config* cfg, rydent_state** out_state);
int rydent_state_load(const char* path, rydent_state** out_state);
int rydent_state_save(const rydent_state* state, const char* path);

int rydent_state_n_atoms(const rydent_state* state); /* 0 for NULL */
double rydent_state_energy(const rydent_state* state); /* NaN if unknown */
double rydent_state_gap(const rydent_state* state);    /* NaN if unknown */

/* Von Neumann entanglement entropy (nats) across the cut after the first
 * size_a atoms. */
int rydent_state_svn(const rydent_state* state, int size_a, double* out_svn);

/* Borrowed view of the 2^n_atoms amplitude vector; valid until the state is
 * destroyed. */
int rydent_state_amplitudes(const rydent_state* state, const double** out_data, size_t* out_len);

void rydent_state_destroy(rydent_state* state);

#ifdef __cplusplus
}
#endif

#endif /* RYDENT_H */
