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
#include "glmturbo.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "errors.hpp"
#include "glm.hpp"
#include "oracle.hpp"
#include "text_io.hpp"

namespace {

thread_local std::string g_last_error;

glmt_status classify(const std::exception& e) {
  if (dynamic_cast<const glmt::ParseError*>(&e)) return GLMT_ERR_PARSE;
  if (dynamic_cast<const glmt::IoError*>(&e)) return GLMT_ERR_IO;
  if (dynamic_cast<const glmt::SolverError*>(&e)) return GLMT_ERR_SOLVER;
  if (dynamic_cast<const glmt::Error*>(&e)) return GLMT_ERR_INVALID_ARG;
  return GLMT_ERR_INTERNAL;
}

template <typename Fn>
glmt_status guarded(Fn&& fn) {
  try {
    fn();
    return GLMT_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return classify(e);
  } catch (...) {
    g_last_error = "unknown error";
    return GLMT_ERR_INTERNAL;
  }
}

glmt_status fail_invalid(const char* message) {
  g_last_error = message;
  return GLMT_ERR_INVALID_ARG;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct glmt_matrix {
  glmt::Matrix m;
};

struct glmt_problem {
  glmt::GlmProblem p;
};

struct glmt_result {
  glmt::GlmTrace trace;
  std::size_t n = 0;
};

struct glmt_experiment {
  glmt::ExperimentConfig cfg;
};

struct glmt_records {
  std::vector<glmt::TrialRecord> records;
};

extern "C" {

const char* glmt_version(void) { return "1.0.0"; }

const char* glmt_status_name(glmt_status status) {
  switch (status) {
    case GLMT_OK: return "ok";
    case GLMT_ERR_INVALID_ARG: return "invalid argument";
    case GLMT_ERR_PARSE: return "parse error";
    case GLMT_ERR_IO: return "io error";
    case GLMT_ERR_SOLVER: return "solver error";
    case GLMT_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* glmt_last_error(void) { return g_last_error.c_str(); }

/* -- matrices -------------------------------------------------------------- */

glmt_status glmt_matrix_create(size_t rows, size_t cols, const double* row_major,
                               glmt_matrix** out) {
  if (!out || !row_major || rows == 0 || cols == 0)
    return fail_invalid("glmt_matrix_create: bad arguments");
  return guarded([&] {
    auto* h = new glmt_matrix;
    h->m = glmt::Matrix(rows, cols);
    std::memcpy(h->m.data(), row_major, rows * cols * sizeof(double));
    *out = h;
  });
}

glmt_status glmt_matrix_read(const char* path, glmt_matrix** out) {
  if (!out || !path) return fail_invalid("glmt_matrix_read: bad arguments");
  return guarded([&] {
    auto* h = new glmt_matrix;
    try {
      h->m = glmt::read_matrix_text(path);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

glmt_status glmt_matrix_write(const glmt_matrix* m, const char* path) {
  if (!m || !path) return fail_invalid("glmt_matrix_write: bad arguments");
  return guarded([&] { glmt::write_matrix_text(m->m, path); });
}

size_t glmt_matrix_rows(const glmt_matrix* m) { return m ? m->m.rows() : 0; }
size_t glmt_matrix_cols(const glmt_matrix* m) { return m ? m->m.cols() : 0; }

glmt_status glmt_matrix_copy_data(const glmt_matrix* m, double* out, size_t len) {
  if (!m || !out) return fail_invalid("glmt_matrix_copy_data: bad arguments");
  if (len < m->m.rows() * m->m.cols())
    return fail_invalid("glmt_matrix_copy_data: buffer too small");
  std::memcpy(out, m->m.data(), m->m.rows() * m->m.cols() * sizeof(double));
  return GLMT_OK;
}

void glmt_matrix_free(glmt_matrix* m) { delete m; }

/* -- problems -------------------------------------------------------------- */

glmt_status glmt_problem_create(const glmt_matrix* a, const double* y, size_t y_len,
                                glmt_problem** out) {
  if (!a || !y || !out) return fail_invalid("glmt_problem_create: bad arguments");
  if (y_len != a->m.rows())
    return fail_invalid("glmt_problem_create: y length must equal rows of A");
  return guarded([&] {
    auto* h = new glmt_problem;
    h->p.a = a->m;
    h->p.y.assign(y, y + y_len);
    *out = h;
  });
}

glmt_status glmt_problem_set_channel_awgn(glmt_problem* p, double noise_var) {
  if (!p) return fail_invalid("null problem");
  return guarded([&] { p->p.channel = std::make_unique<glmt::AwgnChannel>(noise_var); });
}

glmt_status glmt_problem_set_channel_probit(glmt_problem* p, double noise_std) {
  if (!p) return fail_invalid("null problem");
  return guarded([&] { p->p.channel = std::make_unique<glmt::ProbitChannel>(noise_std); });
}

glmt_status glmt_problem_set_prior_bernoulli_gauss(glmt_problem* p, double rho,
                                                   double slab_var) {
  if (!p) return fail_invalid("null problem");
  return guarded(
      [&] { p->p.prior = std::make_unique<glmt::BernoulliGaussianPrior>(rho, slab_var); });
}

glmt_status glmt_problem_set_prior_gaussian(glmt_problem* p, double mean, double var) {
  if (!p) return fail_invalid("null problem");
  return guarded([&] { p->p.prior = std::make_unique<glmt::GaussianPrior>(mean, var); });
}

void glmt_problem_free(glmt_problem* p) { delete p; }

/* -- solving --------------------------------------------------------------- */

void glmt_options_init(glmt_options* opts) {
  if (!opts) return;
  opts->t_max = 50;
  opts->iter_slm = 1;
  opts->init_z_ext_mean = 0.0;
  opts->init_z_ext_var = 1e8;
  opts->damping = 1.0;
  opts->amp_inner_damping = 1.0;
  opts->sbl_reset_alpha = 0;
  opts->sbl_per_component_variance = 0;
  opts->sbl_hyper_a = 1e-10;
  opts->sbl_hyper_b = 1e-10;
}

glmt_status glmt_solve(const glmt_problem* p, const char* algorithm, const glmt_options* opts,
                       const double* x_true, size_t x_true_len, glmt_result** out) {
  if (!p || !algorithm || !out) return fail_invalid("glmt_solve: bad arguments");
  return guarded([&] {
    glmt_options defaults;
    glmt_options_init(&defaults);
    const glmt_options& o = opts ? *opts : defaults;
    glmt::GlmLoopConfig cfg;
    cfg.t_max = o.t_max;
    cfg.iter_slm = o.iter_slm;
    cfg.init_z_ext_mean = o.init_z_ext_mean;
    cfg.init_z_ext_var = o.init_z_ext_var;
    cfg.damping = o.damping;
    cfg.amp_inner_damping = o.amp_inner_damping;
    cfg.sbl_reset_alpha = o.sbl_reset_alpha != 0;
    cfg.sbl_per_component_variance = o.sbl_per_component_variance != 0;
    cfg.sbl_hyper_a = o.sbl_hyper_a;
    cfg.sbl_hyper_b = o.sbl_hyper_b;
    cfg.solver = glmt::parse_solver(algorithm);

    glmt::Vec truth;
    const glmt::Vec* truth_ptr = nullptr;
    if (x_true) {
      if (x_true_len != p->p.n())
        throw glmt::ContractError("glmt_solve: x_true length must equal cols of A");
      truth.assign(x_true, x_true + x_true_len);
      truth_ptr = &truth;
    }

    auto* h = new glmt_result;
    try {
      h->trace = glmt::run(p->p, cfg, truth_ptr);
      h->n = p->p.n();
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

size_t glmt_result_iterations(const glmt_result* r) { return r ? r->trace.iterates.size() : 0; }

int glmt_result_diverged(const glmt_result* r) {
  return (r && r->trace.diverged) ? 1 : 0;
}

size_t glmt_result_signal_len(const glmt_result* r) { return r ? r->n : 0; }

glmt_status glmt_result_x_hat(const glmt_result* r, size_t iteration, double* out, size_t len) {
  if (!r || !out) return fail_invalid("glmt_result_x_hat: bad arguments");
  if (r->trace.iterates.empty()) return fail_invalid("glmt_result_x_hat: empty trace");
  const size_t idx = iteration == 0 ? r->trace.iterates.size() - 1 : iteration - 1;
  if (idx >= r->trace.iterates.size())
    return fail_invalid("glmt_result_x_hat: iteration out of range");
  const glmt::Vec& x = r->trace.iterates[idx].x_hat;
  if (len < x.size()) return fail_invalid("glmt_result_x_hat: buffer too small");
  std::memcpy(out, x.data(), x.size() * sizeof(double));
  return GLMT_OK;
}

glmt_status glmt_result_dnmse(const glmt_result* r, size_t iteration, double* out_db) {
  if (!r || !out_db) return fail_invalid("glmt_result_dnmse: bad arguments");
  if (r->trace.iterates.empty()) return fail_invalid("glmt_result_dnmse: empty trace");
  const size_t idx = iteration == 0 ? r->trace.iterates.size() - 1 : iteration - 1;
  if (idx >= r->trace.iterates.size())
    return fail_invalid("glmt_result_dnmse: iteration out of range");
  *out_db = r->trace.iterates[idx].dnmse_db;
  return GLMT_OK;
}

void glmt_result_free(glmt_result* r) { delete r; }

glmt_status glmt_dnmse(const double* x_hat, const double* x_true, size_t n, double* out_db) {
  if (!x_hat || !x_true || !out_db || n == 0) return fail_invalid("glmt_dnmse: bad arguments");
  return guarded([&] {
    *out_db = glmt::dnmse_db(glmt::Vec(x_hat, x_hat + n), glmt::Vec(x_true, x_true + n));
  });
}

/* -- experiments ----------------------------------------------------------- */

glmt_status glmt_experiment_from_json(const char* json_text, glmt_experiment** out) {
  if (!json_text || !out) return fail_invalid("glmt_experiment_from_json: bad arguments");
  return guarded([&] {
    auto cfg = glmt::ExperimentConfig::from_json_text(json_text);
    *out = new glmt_experiment{std::move(cfg)};
  });
}

glmt_status glmt_experiment_from_json_file(const char* path, glmt_experiment** out) {
  if (!path || !out) return fail_invalid("glmt_experiment_from_json_file: bad arguments");
  return guarded([&] {
    auto cfg = glmt::ExperimentConfig::from_json_file(path);
    *out = new glmt_experiment{std::move(cfg)};
  });
}

glmt_status glmt_experiment_create(glmt_experiment** out) {
  if (!out) return fail_invalid("glmt_experiment_create: bad arguments");
  return guarded([&] { *out = new glmt_experiment{}; });
}

glmt_status glmt_experiment_set_sizes(glmt_experiment* e, size_t n, size_t m) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.n = n;
  e->cfg.m = m;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_kappas(glmt_experiment* e, const double* kappas, size_t count) {
  if (!e || !kappas || count == 0) return fail_invalid("glmt_experiment_set_kappas: bad arguments");
  e->cfg.kappas.assign(kappas, kappas + count);
  return GLMT_OK;
}

glmt_status glmt_experiment_set_algorithms(glmt_experiment* e, const char* csv_names) {
  if (!e || !csv_names) return fail_invalid("glmt_experiment_set_algorithms: bad arguments");
  return guarded([&] {
    std::vector<glmt::Solver> algos;
    std::stringstream ss(csv_names);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (!token.empty()) algos.push_back(glmt::parse_solver(token));
    }
    if (algos.empty()) throw glmt::ParseError("no algorithms in list");
    e->cfg.algorithms = std::move(algos);
  });
}

glmt_status glmt_experiment_set_trials(glmt_experiment* e, int trials) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.trials = trials;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_seed(glmt_experiment* e, uint64_t master_seed) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.master_seed = master_seed;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_snr_db(glmt_experiment* e, double snr_db) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.snr_db = snr_db;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_rho(glmt_experiment* e, double rho) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.rho = rho;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_iterations(glmt_experiment* e, int t_max, int iter_slm) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.t_max = t_max;
  e->cfg.iter_slm = iter_slm;
  return GLMT_OK;
}

glmt_status glmt_experiment_set_damping(glmt_experiment* e, double damping) {
  if (!e) return fail_invalid("null experiment");
  e->cfg.damping = damping;
  return GLMT_OK;
}

const char* glmt_experiment_output_path(const glmt_experiment* e) {
  return e ? e->cfg.output_path.c_str() : "";
}

void glmt_experiment_free(glmt_experiment* e) { delete e; }

glmt_status glmt_experiment_run(const glmt_experiment* e, int threads, glmt_records** out) {
  if (!e || !out) return fail_invalid("glmt_experiment_run: bad arguments");
  return guarded([&] {
    auto records = glmt::run_experiment(e->cfg, threads);
    *out = new glmt_records{std::move(records)};
  });
}

size_t glmt_records_count(const glmt_records* r) { return r ? r->records.size() : 0; }

glmt_status glmt_records_write_csv(const glmt_records* r, const char* path) {
  if (!r || !path) return fail_invalid("glmt_records_write_csv: bad arguments");
  return guarded([&] { glmt::write_records_csv_file(r->records, path); });
}

glmt_status glmt_records_to_csv_string(const glmt_records* r, char** out_text) {
  if (!r || !out_text) return fail_invalid("glmt_records_to_csv_string: bad arguments");
  return guarded([&] {
    char* s = dup_string(glmt::records_csv_string(r->records));
    if (!s) throw std::bad_alloc();
    *out_text = s;
  });
}

glmt_status glmt_records_summary_csv(const glmt_records* r, int average_in_db,
                                     char** out_text) {
  if (!r || !out_text) return fail_invalid("glmt_records_summary_csv: bad arguments");
  return guarded([&] {
    const auto rows = glmt::summarize(r->records, average_in_db != 0);
    char* s = dup_string(glmt::summary_csv_string(rows));
    if (!s) throw std::bad_alloc();
    *out_text = s;
  });
}

void glmt_records_free(glmt_records* r) { delete r; }

void glmt_string_free(char* s) { std::free(s); }

int glmt_selftest(int verbose) { return glmt::oracle::selftest(verbose != 0); }

} /* extern "C" */
