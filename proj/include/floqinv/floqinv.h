// Copyright 2026 The floqinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQINV_FLOQINV_H_
#define FLOQINV_FLOQINV_H_

/* C interface to the floqinv library. All handles are opaque; every call
 * returns a floqinv_status and, on failure, leaves a message retrievable
 * with floqinv_last_error() on the calling thread.
 *
 * Complex arrays are interleaved (re, im) doubles; matrices are row-major. */

#include <stddef.h>

#if defined(_WIN32)
#define FLOQINV_API __declspec(dllexport)
#else
#define FLOQINV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum floqinv_status {
  FLOQINV_OK = 0,
  FLOQINV_ERR_INVALID_ARGUMENT = 1,
  FLOQINV_ERR_CONFIG = 2,
  FLOQINV_ERR_HERMITICITY = 3,
  FLOQINV_ERR_DIMENSION = 4,
  FLOQINV_ERR_STEP_LIMIT = 5,
  FLOQINV_ERR_NOT_UNITARY = 6,
  FLOQINV_ERR_DEGENERATE = 7,
  FLOQINV_ERR_NORM = 8,
  FLOQINV_ERR_PARALLEL = 9,
  FLOQINV_ERR_DOMAIN = 10,
  FLOQINV_ERR_NO_CARRIER = 11,
  FLOQINV_ERR_FRAME_MATCH = 12,
  FLOQINV_ERR_BUDGET = 13,
  FLOQINV_ERR_IO = 14,
  FLOQINV_ERR_INTERNAL = 15
} floqinv_status;

typedef struct floqinv_system floqinv_system;
typedef struct floqinv_pulse floqinv_pulse;
typedef struct floqinv_matrix floqinv_matrix;
typedef struct floqinv_config floqinv_config;

typedef struct floqinv_options {
  int csv;        /* nonzero: machine-readable output */
  double tol;     /* classification tolerance; <= 0 selects 1e-6 */
  int threads;    /* worker threads; < 1 selects 1 */
} floqinv_options;

FLOQINV_API const char* floqinv_version(void);
FLOQINV_API const char* floqinv_last_error(void);
FLOQINV_API const char* floqinv_status_name(floqinv_status status);
/* Process exit code for a status: 0 ok, 2 config, 3 numeric, 4 budget. */
FLOQINV_API int floqinv_exit_code(floqinv_status status);
FLOQINV_API void floqinv_string_free(char* s);

/* dipole: n*n interleaved complex entries. */
FLOQINV_API floqinv_status floqinv_system_new(int n, const double* energies,
                                              const double* dipole,
                                              floqinv_system** out);
FLOQINV_API void floqinv_system_free(floqinv_system* s);
FLOQINV_API int floqinv_system_levels(const floqinv_system* s);

/* kind: "rectangular", "gaussian", "sin2" or "sampled" (samples only used
 * for the latter). */
FLOQINV_API floqinv_status floqinv_pulse_new(const char* kind, double amplitude,
                                             double carrier, double phase,
                                             double duration,
                                             const double* samples,
                                             size_t n_samples, int repeats,
                                             floqinv_pulse** out);
FLOQINV_API void floqinv_pulse_free(floqinv_pulse* p);
FLOQINV_API double floqinv_pulse_eval(const floqinv_pulse* p, double t);

FLOQINV_API floqinv_status floqinv_matrix_new(int n, const double* entries,
                                              floqinv_matrix** out);
FLOQINV_API void floqinv_matrix_free(floqinv_matrix* m);
FLOQINV_API int floqinv_matrix_dim(const floqinv_matrix* m);
/* Copies dim*dim interleaved complex entries into out. */
FLOQINV_API floqinv_status floqinv_matrix_entries(const floqinv_matrix* m,
                                                  double* out);

/* Propagates psi0 (n interleaved complex amplitudes) over the pulse support;
 * tol <= 0 selects the default integrator tolerance. */
FLOQINV_API floqinv_status floqinv_propagate(const floqinv_system* s,
                                             const floqinv_pulse* p,
                                             const double* psi0, double tol,
                                             double* psi_out);
FLOQINV_API floqinv_status floqinv_monodromy(const floqinv_system* s,
                                             const floqinv_pulse* p, double tol,
                                             floqinv_matrix** out);
/* Quasienergies (n doubles, first zone) of a monodromy matrix. */
FLOQINV_API floqinv_status floqinv_floquet(const floqinv_matrix* v,
                                           double period, double* omegas);

/* params: chi, delta1, delta2, delta. */
FLOQINV_API floqinv_status floqinv_su2_decompose(const floqinv_matrix* v,
                                                 double params[4]);
FLOQINV_API floqinv_status floqinv_su2_compose(const double params[4],
                                               floqinv_matrix** out);

/* scenario: pspc_control, pc_control, pspi_eff2ls_ortho, pi_eff2ls_ortho,
 * pspc_eff2ls_nonortho, pc_eff2ls_nonortho. */
FLOQINV_API floqinv_status floqinv_condition_count(int n, const char* scenario,
                                                   int* out);

FLOQINV_API floqinv_status floqinv_config_load(const char* path,
                                               floqinv_config** out);
FLOQINV_API floqinv_status floqinv_config_parse(const char* text,
                                                floqinv_config** out);
FLOQINV_API void floqinv_config_free(floqinv_config* c);
/* Resolved configuration text; free with floqinv_string_free. */
FLOQINV_API floqinv_status floqinv_config_render(const floqinv_config* c,
                                                 char** out);

/* Trajectory path from the [output] section, or NULL when unset. Owned by
 * the config. */
FLOQINV_API const char* floqinv_config_trajectory_path(const floqinv_config* c);

/* Runs a CLI subcommand. On FLOQINV_OK and FLOQINV_ERR_BUDGET *out holds the
 * report (free with floqinv_string_free); is_csv may be NULL. */
FLOQINV_API floqinv_status floqinv_run_command(const floqinv_config* c,
                                               const char* command,
                                               const floqinv_options* options,
                                               char** out, int* is_csv);

#ifdef __cplusplus
}
#endif

#endif /* FLOQINV_FLOQINV_H_ */
