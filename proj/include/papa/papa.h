// Copyright 2026 The PAPA Tomography Authors
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

/* C interface to the pairwise process tomography library. Every function
 * returns a papa_status; on failure papa_last_error() describes the problem
 * for the calling thread. Strings returned through char** are owned by the
 * caller and released with papa_string_free. Matrices, models and configs
 * cross the boundary as JSON text. */
#ifndef PAPA_PAPA_H_
#define PAPA_PAPA_H_

#include <stdint.h>

#if defined(PAPA_BUILDING_LIBRARY)
#define PAPA_API __attribute__((visibility("default")))
#else
#define PAPA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum papa_status {
  PAPA_OK = 0,
  PAPA_ERR_INVALID_ARGUMENT = 1,
  PAPA_ERR_INVALID_DIMENSION = 2,
  PAPA_ERR_INVALID_KRAUS = 3,
  PAPA_ERR_OUT_OF_RANGE = 4,
  PAPA_ERR_DEGENERATE_INPUT = 5,
  PAPA_ERR_NOT_DECOMPOSABLE = 6,
  PAPA_ERR_UNSUPPORTED = 7,
  PAPA_ERR_DIVERGED = 8,
  PAPA_ERR_PARSE = 9,
  PAPA_ERR_IO = 10,
  PAPA_ERR_NULL_POINTER = 11,
  PAPA_ERR_INTERNAL = 99
} papa_status;

typedef struct papa_process papa_process;         /* simulated noisy process */
typedef struct papa_tomography papa_tomography;   /* pairwise Choi data */
typedef struct papa_model papa_model;             /* pairwise ansatz */
typedef struct papa_result papa_result;           /* reconstruction outcome */

PAPA_API const char* papa_version(void);
PAPA_API const char* papa_last_error(void);
PAPA_API const char* papa_status_name(papa_status status);
PAPA_API void papa_string_free(char* s);

/* gate: a label such as "XYX" or "CNOT12", or a JSON gate object.
 * error_json: {"type":"coherent_local","phi":..} | {"type":"decoherence",..}
 * | {"type":"cr_coherent","beta":..,"phi_zz":..}. */
PAPA_API papa_status papa_process_simulate(const char* gate, const char* error_json, papa_process** out);
PAPA_API papa_status papa_process_n_qubits(const papa_process* p, int* out);
PAPA_API papa_status papa_process_to_json(const papa_process* p, char** out_json);
/* Two-qubit Choi state of the process on pair (k, l), spectators maximally mixed. */
PAPA_API papa_status papa_process_pairwise_qpt(const papa_process* p, int k, int l, char** out_json);
PAPA_API void papa_process_free(papa_process* p);

/* spectator_samples == 0 gives the exact maximally mixed average. */
PAPA_API papa_status papa_tomography_from_process(const papa_process* p, int spectator_samples, uint64_t seed,
                                                  papa_tomography** out);
/* Bootstraps the data from simulated two-qubit gate-sets. */
PAPA_API papa_status papa_tomography_from_gateset(const char* gate, const char* error_json, papa_tomography** out);
PAPA_API papa_status papa_tomography_from_json(const char* json, papa_tomography** out);
PAPA_API papa_status papa_tomography_to_json(const papa_tomography* t, char** out_json);
PAPA_API void papa_tomography_free(papa_tomography* t);

PAPA_API papa_status papa_model_ideal_guess(const char* gate, papa_model** out);
PAPA_API papa_status papa_model_from_json(const char* json, papa_model** out);
PAPA_API papa_status papa_model_to_json(const papa_model* m, char** out_json);
PAPA_API papa_status papa_model_full_trace_distance(const papa_model* m, const papa_process* truth, double* out);
PAPA_API void papa_model_free(papa_model* m);

/* solver_json may be NULL for defaults. */
PAPA_API papa_status papa_solve(const papa_tomography* data, const papa_model* init, const char* solver_json,
                                papa_result** out);
PAPA_API papa_status papa_result_model(const papa_result* r, papa_model** out);
PAPA_API papa_status papa_result_converged(const papa_result* r, int* out);
PAPA_API papa_status papa_result_to_json(const papa_result* r, char** out_json);
PAPA_API void papa_result_free(papa_result* r);

/* JSON-in, JSON-out drivers used by the command line tool.
 *
 * simulate config: {"gate", "error", "mode", "spectator_samples", "seed"};
 * output holds the gate, error, process superoperator and tomography data.
 *
 * reconstruct config: {"tomography", "gate" or "init_model", "solver",
 * optional "process"}; output is the result JSON, with the full-process
 * trace distance when a process is given. */
PAPA_API papa_status papa_simulate_run(const char* config_json, int64_t seed_override, char** out_json);
PAPA_API papa_status papa_reconstruct_run(const char* config_json, char** out_json, int* converged);

/* Runs a fig2_bench, cr_sweep, tol_sweep, diff_map or single experiment.
 * expected_kind, when not NULL, fills in a missing "kind" and must match a
 * present one. A negative seed_override keeps the config seed. out_csv receives the record
 * table (the 16x16 matrix for diff_map); exit_code is 0 when every case
 * converged and 2 otherwise. Any output pointer may be NULL. */
PAPA_API papa_status papa_experiment_run(const char* config_json, const char* expected_kind, int jobs, int64_t seed_override, char** out_json,
                                         char** out_csv, int* exit_code);

/* The config's output_path, empty when absent. */
PAPA_API papa_status papa_experiment_output_path(const char* config_json, char** out_path);

#ifdef __cplusplus
}
#endif

#endif /* PAPA_PAPA_H_ */
