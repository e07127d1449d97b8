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
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "glm.hpp"
#include "synth.hpp"

namespace glmt {

/// Full description of a benchmark run: problem sizes, channel SNR, the
/// condition-number sweep, the algorithms to compare, and seeding. Defaults
/// are the desk-scale benchmark protocol (N = 128, M = 512, 20 trials,
/// damping 0.8, per-component SBL variance, Gamma(0.1, 0.1) hyperprior) that
/// keeps the whole suite under a minute; the shipped full-scale config
/// quadruples N and runs 100 trials. The damping and SBL settings were
/// calibrated on pilot runs: the undamped exchange limit-cycles at these
/// problem sizes, and a near-improper hyperprior lets the SBL scale drift
/// under the scale-blind sign channel.
struct ExperimentConfig {
  std::size_t n = 128;
  std::size_t m = 512;
  double rho = 0.1;
  double slab_var = 0.0;  // <= 0 means 1/rho
  double snr_db = 50.0;
  std::vector<double> kappas{1.0};
  std::vector<Solver> algorithms{Solver::GrVamp};
  int trials = 20;
  int t_max = 50;
  int iter_slm = 1;
  std::uint64_t master_seed = 20260808;
  std::string output_path;
  double damping = 0.8;
  double amp_inner_damping = 1.0;
  double init_z_ext_mean = 0.0;
  double init_z_ext_var = 1e8;
  bool average_in_db = true;  // false: average linear NMSE, then convert
  bool sbl_reset_alpha = false;
  bool sbl_per_component_variance = true;
  double sbl_hyper_a = 0.1;
  double sbl_hyper_b = 0.1;

  void validate() const;
  GlmLoopConfig loop_config(Solver solver) const;

  static ExperimentConfig from_json_text(const std::string& json_text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;
};

struct TrialRecord {
  Solver algorithm = Solver::GrVamp;
  double kappa = 1.0;
  int trial = 0;
  int iteration = 0;  // 1-based outer iteration
  double dnmse_db = 0.0;
  bool diverged = false;
  double wall_time_ms = 0.0;
};

/// Deterministic per-trial problem seeds split from the master seed and the
/// kappa value (not its list position), so a cell reproduces identically
/// whether run alone or inside a sweep.
MatrixSpec trial_matrix_spec(const ExperimentConfig& cfg, double kappa, int trial);
SignalSpec trial_signal_spec(const ExperimentConfig& cfg, double kappa, int trial);

/// Runs every (kappa, trial) cell; within a trial all algorithms see the
/// identical problem instance (paired comparison). Cells run on a worker
/// pool (`threads` <= 0 uses the hardware count; the GLM_TURBO_THREADS
/// environment variable overrides either) and the merged record order is
/// independent of the thread count: kappa list order, then trial, then
/// algorithm order, then iteration. Solver divergence is recorded in the
/// affected rows, never fatal.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, int threads = 1);

struct SummaryRow {
  Solver algorithm = Solver::GrVamp;
  double kappa = 1.0;
  int iteration = 0;
  double mean_dnmse_db = 0.0;  // +999 sentinel when every trial diverged
  int diverged_trials = 0;
  int contributing_trials = 0;
};

constexpr double kAllDivergedSentinelDb = 999.0;

/// Mean dNMSE per (algorithm, kappa, iteration) over non-diverged trials.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records,
                                  bool average_in_db = true);

// CSV schema (exact header):
//   algorithm,kappa,trial,iteration,dnmse_db,diverged,wall_time_ms
void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out);
void write_records_csv_file(const std::vector<TrialRecord>& records, const std::string& path);
std::string records_csv_string(const std::vector<TrialRecord>& records);

void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);
std::string summary_csv_string(const std::vector<SummaryRow>& rows);

/// Effective worker count: GLM_TURBO_THREADS env var wins, then `requested`,
/// then the hardware count; always >= 1.
int resolve_thread_count(int requested);

}  // namespace glmt
