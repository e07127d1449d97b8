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

// Benchmark and inference CLI on top of the glmturbo C API.
//
// Exit codes: 0 success, 1 usage/config/solver error, 2 I/O error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glmturbo.h"

namespace {

int status_to_exit(glmt_status s) {
  if (s == GLMT_OK) return 0;
  return s == GLMT_ERR_IO ? 2 : 1;
}

int report(glmt_status s, const char* context) {
  if (s == GLMT_OK) return 0;
  std::fprintf(stderr, "glmt: %s: %s (%s)\n", context, glmt_last_error(), glmt_status_name(s));
  return status_to_exit(s);
}

struct ExperimentDeleter {
  void operator()(glmt_experiment* e) const { glmt_experiment_free(e); }
};
struct RecordsDeleter {
  void operator()(glmt_records* r) const { glmt_records_free(r); }
};
struct MatrixDeleter {
  void operator()(glmt_matrix* m) const { glmt_matrix_free(m); }
};
struct ProblemDeleter {
  void operator()(glmt_problem* p) const { glmt_problem_free(p); }
};
struct ResultDeleter {
  void operator()(glmt_result* r) const { glmt_result_free(r); }
};

using ExperimentPtr = std::unique_ptr<glmt_experiment, ExperimentDeleter>;
using RecordsPtr = std::unique_ptr<glmt_records, RecordsDeleter>;
using MatrixPtr = std::unique_ptr<glmt_matrix, MatrixDeleter>;
using ProblemPtr = std::unique_ptr<glmt_problem, ProblemDeleter>;
using ResultPtr = std::unique_ptr<glmt_result, ResultDeleter>;

int run_and_write(glmt_experiment* exp, const std::string& out_path, int threads) {
  glmt_records* raw = nullptr;
  if (glmt_status s = glmt_experiment_run(exp, threads, &raw); s != GLMT_OK)
    return report(s, "running experiment");
  RecordsPtr records(raw);

  if (glmt_status s = glmt_records_write_csv(records.get(), out_path.c_str()); s != GLMT_OK)
    return report(s, "writing CSV");
  std::printf("wrote %zu records to %s\n", glmt_records_count(records.get()), out_path.c_str());

  char* summary = nullptr;
  if (glmt_status s = glmt_records_summary_csv(records.get(), 1, &summary); s != GLMT_OK)
    return report(s, "summarizing records");
  std::printf("%s", summary);
  glmt_string_free(summary);
  return 0;
}

std::vector<double> matrix_to_vector(const glmt_matrix* m) {
  std::vector<double> v(glmt_matrix_rows(m) * glmt_matrix_cols(m));
  glmt_matrix_copy_data(m, v.data(), v.size());
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glmt: turbo-style inference for generalized linear observation models"};
  app.require_subcommand(1);

  // ---- run: full experiment from a JSON config ----
  auto* cmd_run = app.add_subcommand("run", "run a benchmark experiment from a config file");
  std::string run_config, run_out, run_algos;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  int run_threads = 0;
  cmd_run->add_option("--config", run_config, "experiment config (JSON)")->required();
  cmd_run->add_option("--out", run_out, "output CSV path (default: config output_path)");
  cmd_run->add_option("--seed", run_seed, "override master seed")
      ->each([&](const std::string&) { run_seed_set = true; });
  cmd_run->add_option("--threads", run_threads, "worker threads (0 = hardware)");
  cmd_run->add_option("--algo", run_algos, "override algorithm list (comma separated)");

  // ---- sweep: condition-number sweep shortcut ----
  auto* cmd_sweep = app.add_subcommand("sweep", "condition-number sweep with default sizes");
  std::vector<double> sweep_kappas{1.0, 100.0, 10000.0, 1000000.0};
  std::string sweep_out = "sweep.csv";
  std::string sweep_algos = "Gr-AMP,GAMP,Gr-VAMP,Gr-SBL";
  std::uint64_t sweep_seed = 1;
  int sweep_threads = 0, sweep_trials = 20, sweep_tmax = 50, sweep_iter_slm = 1;
  std::size_t sweep_n = 128, sweep_m = 512;
  double sweep_snr = 50.0, sweep_rho = 0.1;
  cmd_sweep->add_option("--kappas", sweep_kappas, "condition numbers to sweep");
  cmd_sweep->add_option("--out", sweep_out, "output CSV path");
  cmd_sweep->add_option("--algo", sweep_algos, "algorithms (comma separated)");
  cmd_sweep->add_option("--seed", sweep_seed, "master seed");
  cmd_sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware)");
  cmd_sweep->add_option("--trials", sweep_trials, "trials per condition number");
  cmd_sweep->add_option("--n", sweep_n, "signal length N");
  cmd_sweep->add_option("--m", sweep_m, "measurement count M");
  cmd_sweep->add_option("--snr-db", sweep_snr, "SNR in dB");
  cmd_sweep->add_option("--rho", sweep_rho, "signal sparsity");
  cmd_sweep->add_option("--t-max", sweep_tmax, "outer iterations");
  cmd_sweep->add_option("--iter-slm", sweep_iter_slm, "inner iterations per outer pass");

  // ---- solve: single problem from files ----
  auto* cmd_solve = app.add_subcommand("solve", "solve one problem from matrix/observation files");
  std::string solve_matrix, solve_obs, solve_algo = "Gr-VAMP", solve_channel = "probit";
  std::string solve_truth, solve_out;
  double solve_noise_std = 0.0, solve_noise_var = 1.0, solve_rho = 0.1, solve_slab = 0.0;
  int solve_tmax = 50, solve_iter_slm = 1;
  cmd_solve->add_option("--matrix", solve_matrix, "matrix file (text format)")->required();
  cmd_solve->add_option("--obs", solve_obs, "observation vector file")->required();
  cmd_solve->add_option("--algo", solve_algo, "Gr-AMP | GAMP | Gr-VAMP | Gr-SBL");
  cmd_solve->add_option("--channel", solve_channel, "probit | awgn")
      ->check(CLI::IsMember({"probit", "awgn"}));
  cmd_solve->add_option("--noise-std", solve_noise_std, "probit noise std (default 0)");
  cmd_solve->add_option("--noise-var", solve_noise_var, "awgn noise variance (default 1)");
  cmd_solve->add_option("--rho", solve_rho, "spike-slab sparsity (default 0.1)");
  cmd_solve->add_option("--slab-var", solve_slab, "slab variance (default 1/rho)");
  cmd_solve->add_option("--t-max", solve_tmax, "outer iterations");
  cmd_solve->add_option("--iter-slm", solve_iter_slm, "inner iterations per outer pass");
  cmd_solve->add_option("--truth", solve_truth, "optional truth vector file (prints dNMSE)");
  cmd_solve->add_option("--out", solve_out, "also write the estimate to this file");

  // ---- selftest ----
  auto* cmd_selftest = app.add_subcommand("selftest", "run the built-in oracle suites");
  bool selftest_quiet = false;
  cmd_selftest->add_flag("--quiet", selftest_quiet, "suppress per-suite output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  if (cmd_run->parsed()) {
    glmt_experiment* raw = nullptr;
    if (glmt_status s = glmt_experiment_from_json_file(run_config.c_str(), &raw); s != GLMT_OK)
      return report(s, "loading config");
    ExperimentPtr exp(raw);
    if (run_seed_set) glmt_experiment_set_seed(exp.get(), run_seed);
    if (!run_algos.empty())
      if (glmt_status s = glmt_experiment_set_algorithms(exp.get(), run_algos.c_str());
          s != GLMT_OK)
        return report(s, "setting algorithms");
    std::string out = run_out;
    if (out.empty()) out = glmt_experiment_output_path(exp.get());
    if (out.empty()) {
      std::fprintf(stderr, "glmt: no output path (use --out or config output_path)\n");
      return 1;
    }
    return run_and_write(exp.get(), out, run_threads);
  }

  if (cmd_sweep->parsed()) {
    glmt_experiment* raw = nullptr;
    if (glmt_status s = glmt_experiment_create(&raw); s != GLMT_OK)
      return report(s, "creating experiment");
    ExperimentPtr exp(raw);
    glmt_experiment_set_sizes(exp.get(), sweep_n, sweep_m);
    glmt_experiment_set_kappas(exp.get(), sweep_kappas.data(), sweep_kappas.size());
    glmt_experiment_set_trials(exp.get(), sweep_trials);
    glmt_experiment_set_seed(exp.get(), sweep_seed);
    glmt_experiment_set_snr_db(exp.get(), sweep_snr);
    glmt_experiment_set_rho(exp.get(), sweep_rho);
    glmt_experiment_set_iterations(exp.get(), sweep_tmax, sweep_iter_slm);
    if (glmt_status s = glmt_experiment_set_algorithms(exp.get(), sweep_algos.c_str());
        s != GLMT_OK)
      return report(s, "setting algorithms");
    return run_and_write(exp.get(), sweep_out, sweep_threads);
  }

  if (cmd_solve->parsed()) {
    glmt_matrix* araw = nullptr;
    if (glmt_status s = glmt_matrix_read(solve_matrix.c_str(), &araw); s != GLMT_OK)
      return report(s, "reading matrix");
    MatrixPtr a(araw);

    glmt_matrix* yraw = nullptr;
    if (glmt_status s = glmt_matrix_read(solve_obs.c_str(), &yraw); s != GLMT_OK)
      return report(s, "reading observations");
    MatrixPtr ymat(yraw);
    const std::vector<double> y = matrix_to_vector(ymat.get());

    glmt_problem* praw = nullptr;
    if (glmt_status s = glmt_problem_create(a.get(), y.data(), y.size(), &praw); s != GLMT_OK)
      return report(s, "building problem");
    ProblemPtr problem(praw);

    glmt_status s = (solve_channel == "awgn")
                        ? glmt_problem_set_channel_awgn(problem.get(), solve_noise_var)
                        : glmt_problem_set_channel_probit(problem.get(), solve_noise_std);
    if (s != GLMT_OK) return report(s, "configuring channel");
    if ((s = glmt_problem_set_prior_bernoulli_gauss(problem.get(), solve_rho, solve_slab)) !=
        GLMT_OK)
      return report(s, "configuring prior");

    std::vector<double> truth;
    if (!solve_truth.empty()) {
      glmt_matrix* traw = nullptr;
      if ((s = glmt_matrix_read(solve_truth.c_str(), &traw)) != GLMT_OK)
        return report(s, "reading truth");
      MatrixPtr tmat(traw);
      truth = matrix_to_vector(tmat.get());
    }

    glmt_options opts;
    glmt_options_init(&opts);
    opts.t_max = solve_tmax;
    opts.iter_slm = solve_iter_slm;

    glmt_result* rraw = nullptr;
    s = glmt_solve(problem.get(), solve_algo.c_str(), &opts,
                   truth.empty() ? nullptr : truth.data(), truth.size(), &rraw);
    if (s != GLMT_OK) return report(s, "solving");
    ResultPtr result(rraw);

    const size_t n = glmt_result_signal_len(result.get());
    std::vector<double> x_hat(n);
    glmt_result_x_hat(result.get(), 0, x_hat.data(), n);

    std::printf("iterations: %zu\n", glmt_result_iterations(result.get()));
    std::printf("diverged: %d\n", glmt_result_diverged(result.get()));
    if (!truth.empty()) {
      double db = 0.0;
      glmt_result_dnmse(result.get(), 0, &db);
      std::printf("dnmse_db: %.6f\n", db);
    }
    std::printf("x_hat:\n");
    for (double v : x_hat) std::printf("%.17g\n", v);

    if (!solve_out.empty()) {
      glmt_matrix* xraw = nullptr;
      if ((s = glmt_matrix_create(n, 1, x_hat.data(), &xraw)) != GLMT_OK)
        return report(s, "packing estimate");
      MatrixPtr xmat(xraw);
      if ((s = glmt_matrix_write(xmat.get(), solve_out.c_str())) != GLMT_OK)
        return report(s, "writing estimate");
    }
    return 0;
  }

  if (cmd_selftest->parsed()) {
    const int failures = glmt_selftest(selftest_quiet ? 0 : 1);
    if (failures > 0) {
      std::fprintf(stderr, "glmt: selftest: %d suite(s) failed\n", failures);
      return 1;
    }
    std::printf("selftest: all suites passed\n");
    return 0;
  }

  return 1;
}
