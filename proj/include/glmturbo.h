/*
 * Copyright 2026 The glmturbo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * glmturbo C API.
 *
 * Inference for generalized linear observation models y ~ prod_a p(y_a | z_a),
 * z = A x, by turbo iteration: each outer pass reduces the problem to an
 * equivalent linear-Gaussian one and hands it to an inner linear-model solver
 * (AMP, VAMP, or SBL), exchanging extrinsic Gaussian messages between the two
 * stages. A direct generalized-AMP stepper is included for cross-checking.
 *
 * Conventions:
 *   - All functions returning glmt_status set a thread-local error message
 *     retrievable via glmt_last_error() on failure.
 *   - Objects are opaque; every create/read function has a matching free
 *     function. Output parameters are written only on GLMT_OK.
 *   - Matrices are dense row-major doubles.
 */
#ifndef GLMTURBO_H
#define GLMTURBO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GLMT_API __declspec(dllexport)
#else
#define GLMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glmt_status {
  GLMT_OK = 0,
  GLMT_ERR_INVALID_ARG = 1, /* bad argument / contract violation */
  GLMT_ERR_PARSE = 2,       /* config or data file malformed */
  GLMT_ERR_IO = 3,          /* filesystem failure */
  GLMT_ERR_SOLVER = 4,      /* numerical failure */
  GLMT_ERR_INTERNAL = 5
} glmt_status;

GLMT_API const char* glmt_version(void);
GLMT_API const char* glmt_status_name(glmt_status status);

/* Message describing the most recent failure on the calling thread. */
GLMT_API const char* glmt_last_error(void);

/* -- matrices -------------------------------------------------------------- */

typedef struct glmt_matrix glmt_matrix;

GLMT_API glmt_status glmt_matrix_create(size_t rows, size_t cols, const double* row_major,
                                        glmt_matrix** out);
/* Text format: first line "rows cols", then row-major values, 17 significant
 * digits (round-trip exact). */
GLMT_API glmt_status glmt_matrix_read(const char* path, glmt_matrix** out);
GLMT_API glmt_status glmt_matrix_write(const glmt_matrix* m, const char* path);
GLMT_API size_t glmt_matrix_rows(const glmt_matrix* m);
GLMT_API size_t glmt_matrix_cols(const glmt_matrix* m);
GLMT_API glmt_status glmt_matrix_copy_data(const glmt_matrix* m, double* out, size_t len);
GLMT_API void glmt_matrix_free(glmt_matrix* m);

/* -- problems -------------------------------------------------------------- */

typedef struct glmt_problem glmt_problem;

/* Copies A and y; y_len must equal the number of rows of A. The problem has
 * no channel or prior until the setters below are called. */
GLMT_API glmt_status glmt_problem_create(const glmt_matrix* a, const double* y, size_t y_len,
                                         glmt_problem** out);
GLMT_API glmt_status glmt_problem_set_channel_awgn(glmt_problem* p, double noise_var);
/* One-bit channel y = sign(z + w); observations must be exactly +/-1. */
GLMT_API glmt_status glmt_problem_set_channel_probit(glmt_problem* p, double noise_std);
/* slab_var <= 0 selects the default 1/rho. */
GLMT_API glmt_status glmt_problem_set_prior_bernoulli_gauss(glmt_problem* p, double rho,
                                                            double slab_var);
GLMT_API glmt_status glmt_problem_set_prior_gaussian(glmt_problem* p, double mean, double var);
GLMT_API void glmt_problem_free(glmt_problem* p);

/* -- solving --------------------------------------------------------------- */

typedef struct glmt_options {
  int t_max;               /* outer iterations (default 50) */
  int iter_slm;            /* inner solver iterations per outer pass (default 1) */
  double init_z_ext_mean;  /* initial extrinsic mean (default 0) */
  double init_z_ext_var;   /* initial extrinsic variance (default 1e8) */
  double damping;          /* outer damping in (0,1], 1 = off */
  double amp_inner_damping;
  int sbl_reset_alpha;     /* reset SBL precisions each outer pass (default 0) */
  int sbl_per_component_variance;
  double sbl_hyper_a, sbl_hyper_b;
} glmt_options;

GLMT_API void glmt_options_init(glmt_options* opts);

typedef struct glmt_result glmt_result;

/* algorithm: "Gr-AMP", "Gr-VAMP", "Gr-SBL", or "GAMP" (case/hyphen
 * insensitive). x_true of length N is optional (may be NULL) and enables the
 * per-iteration debiased NMSE. opts may be NULL for defaults. */
GLMT_API glmt_status glmt_solve(const glmt_problem* p, const char* algorithm,
                                const glmt_options* opts, const double* x_true,
                                size_t x_true_len, glmt_result** out);

GLMT_API size_t glmt_result_iterations(const glmt_result* r);
GLMT_API int glmt_result_diverged(const glmt_result* r);
GLMT_API size_t glmt_result_signal_len(const glmt_result* r);
/* iteration is 1-based; 0 selects the final iterate. */
GLMT_API glmt_status glmt_result_x_hat(const glmt_result* r, size_t iteration, double* out,
                                       size_t len);
GLMT_API glmt_status glmt_result_dnmse(const glmt_result* r, size_t iteration, double* out_db);
GLMT_API void glmt_result_free(glmt_result* r);

/* Debiased NMSE in dB: min over c of 20 log10(||c x_hat - x|| / ||x||). */
GLMT_API glmt_status glmt_dnmse(const double* x_hat, const double* x_true, size_t n,
                                double* out_db);

/* -- benchmark experiments ------------------------------------------------- */

typedef struct glmt_experiment glmt_experiment;
typedef struct glmt_records glmt_records;

/* JSON config keys: N, M, rho, slab_var, snr_db, kappas, algorithms, trials,
 * T_max, Iter_SLM, master_seed, output_path, damping, init_z_ext_mean,
 * init_z_ext_var, average_in_db, sbl_* (see README for the schema). */
GLMT_API glmt_status glmt_experiment_from_json(const char* json_text, glmt_experiment** out);
GLMT_API glmt_status glmt_experiment_from_json_file(const char* path, glmt_experiment** out);
/* Desk-scale defaults: N=128, M=512, rho=0.1, SNR 50 dB, kappa={1}, 20 trials. */
GLMT_API glmt_status glmt_experiment_create(glmt_experiment** out);

GLMT_API glmt_status glmt_experiment_set_sizes(glmt_experiment* e, size_t n, size_t m);
GLMT_API glmt_status glmt_experiment_set_kappas(glmt_experiment* e, const double* kappas,
                                                size_t count);
/* Comma-separated list, e.g. "Gr-AMP,GAMP,Gr-VAMP,Gr-SBL". */
GLMT_API glmt_status glmt_experiment_set_algorithms(glmt_experiment* e, const char* csv_names);
GLMT_API glmt_status glmt_experiment_set_trials(glmt_experiment* e, int trials);
GLMT_API glmt_status glmt_experiment_set_seed(glmt_experiment* e, uint64_t master_seed);
GLMT_API glmt_status glmt_experiment_set_snr_db(glmt_experiment* e, double snr_db);
GLMT_API glmt_status glmt_experiment_set_rho(glmt_experiment* e, double rho);
GLMT_API glmt_status glmt_experiment_set_iterations(glmt_experiment* e, int t_max,
                                                    int iter_slm);
GLMT_API glmt_status glmt_experiment_set_damping(glmt_experiment* e, double damping);
GLMT_API const char* glmt_experiment_output_path(const glmt_experiment* e);
GLMT_API void glmt_experiment_free(glmt_experiment* e);

/* Runs all (kappa, trial) cells on `threads` workers (<= 0: hardware count;
 * the GLM_TURBO_THREADS environment variable overrides either). Results are
 * deterministic given the config, independent of the thread count. */
GLMT_API glmt_status glmt_experiment_run(const glmt_experiment* e, int threads,
                                         glmt_records** out);

GLMT_API size_t glmt_records_count(const glmt_records* r);
/* CSV schema: algorithm,kappa,trial,iteration,dnmse_db,diverged,wall_time_ms */
GLMT_API glmt_status glmt_records_write_csv(const glmt_records* r, const char* path);
/* Malloc'd CSV text; release with glmt_string_free. average_in_db selects dB
 * or linear-domain averaging of the per-iteration mean. */
GLMT_API glmt_status glmt_records_to_csv_string(const glmt_records* r, char** out_text);
GLMT_API glmt_status glmt_records_summary_csv(const glmt_records* r, int average_in_db,
                                              char** out_text);
GLMT_API void glmt_records_free(glmt_records* r);
GLMT_API void glmt_string_free(char* s);

/* -- self verification ----------------------------------------------------- */

/* Runs the built-in oracle suites (quadrature moment checks, dense-solve
 * LMMSE checks, the generalized-AMP equivalence, matrix generation, message
 * algebra). Returns the number of failed suites, 0 on full pass; prints one
 * line per suite when verbose is nonzero. */
GLMT_API int glmt_selftest(int verbose);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GLMTURBO_H */
