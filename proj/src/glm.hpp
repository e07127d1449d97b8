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

#include <limits>
#include <string>
#include <vector>

#include "amp.hpp"
#include "channels.hpp"
#include "priors.hpp"

namespace glmt {

enum class Solver { GrAmp, GrVamp, GrSbl, Gamp };

/// Canonical display name ("Gr-AMP", "GAMP", ...).
const char* solver_name(Solver s);
/// Parses names case-insensitively, with or without the hyphen
/// ("gr-vamp", "GrVAMP", "grvamp" all work). Throws ParseError otherwise.
Solver parse_solver(const std::string& name);

/// A generalized-linear inverse problem: observation y generated from z = A x
/// through a component-wise channel, signal x drawn from a separable prior.
struct GlmProblem {
  Matrix a;
  Vec y;
  std::unique_ptr<Channel> channel;
  std::unique_ptr<Prior> prior;

  GlmProblem() = default;
  GlmProblem(Matrix a_in, Vec y_in, std::unique_ptr<Channel> ch, std::unique_ptr<Prior> pr);
  GlmProblem(const GlmProblem& other);
  GlmProblem& operator=(const GlmProblem& other);
  GlmProblem(GlmProblem&&) = default;
  GlmProblem& operator=(GlmProblem&&) = default;

  std::size_t n() const { return a.cols(); }
  std::size_t m() const { return a.rows(); }
  void validate() const;
};

struct GlmLoopConfig {
  int t_max = 50;
  int iter_slm = 1;
  double init_z_ext_mean = 0.0;
  double init_z_ext_var = 1e8;
  double damping = 1.0;            // outer blending of the extrinsic message
  double amp_inner_damping = 1.0;  // blending inside the AMP inner solver
  Solver solver = Solver::GrVamp;
  bool sbl_reset_alpha = false;    // reset hyper-precisions each outer pass
  bool sbl_per_component_variance = false;
  double sbl_hyper_a = 1e-10;
  double sbl_hyper_b = 1e-10;

  void validate() const;
};

/// One outer-iteration record.
struct GlmIterate {
  Vec x_hat;
  double z_ext_mean_avg = 0.0;  // mean of the extrinsic means
  double z_ext_var_avg = 0.0;   // mean of the extrinsic variances
  double dnmse_db = std::numeric_limits<double>::quiet_NaN();  // NaN without truth
  double wall_ms = 0.0;  // elapsed since run start when this iterate finished
};

struct GlmTrace {
  std::vector<GlmIterate> iterates;  // at most t_max entries
  bool diverged = false;
  int diverged_at = -1;  // 1-based outer iteration, -1 if clean

  const Vec& final_x_hat() const { return iterates.back().x_hat; }
};

/// Runs the turbo loop: per outer iteration the channel stage produces the
/// pseudo linear problem, the chosen inner solver runs iter_slm iterations on
/// it (state warm-started across outer iterations), and the output extrinsic
/// message is refreshed. Solver::Gamp bypasses the decomposition and runs the
/// direct generalized-AMP stepper instead. Inner-solver failure or a
/// non-finite iterate flags divergence, halts the loop, and returns the
/// partial trace.
GlmTrace run(const GlmProblem& problem, const GlmLoopConfig& config,
             const Vec* x_true = nullptr);

/// Debiased normalized MSE in dB: min over c of 20 log10(||c x_hat - x|| / ||x||).
/// The minimizer is c = <x_hat, x>/<x_hat, x_hat> (c = 0 when x_hat = 0, giving
/// 0 dB). Perfect recovery is floored at -320 dB. Throws InputError when
/// ||x_true|| = 0.
double dnmse_db(const Vec& x_hat, const Vec& x_true);

}  // namespace glmt
