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
#include "glm.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "sbl.hpp"
#include "vamp.hpp"

namespace glmt {

const char* solver_name(Solver s) {
  switch (s) {
    case Solver::GrAmp: return "Gr-AMP";
    case Solver::GrVamp: return "Gr-VAMP";
    case Solver::GrSbl: return "Gr-SBL";
    case Solver::Gamp: return "GAMP";
  }
  return "?";
}

Solver parse_solver(const std::string& name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "gramp") return Solver::GrAmp;
  if (key == "grvamp") return Solver::GrVamp;
  if (key == "grsbl") return Solver::GrSbl;
  if (key == "gamp") return Solver::Gamp;
  throw ParseError("unknown solver '" + name +
                   "' (expected one of Gr-AMP, Gr-VAMP, Gr-SBL, GAMP)");
}

GlmProblem::GlmProblem(Matrix a_in, Vec y_in, std::unique_ptr<Channel> ch,
                       std::unique_ptr<Prior> pr)
    : a(std::move(a_in)), y(std::move(y_in)), channel(std::move(ch)), prior(std::move(pr)) {}

GlmProblem::GlmProblem(const GlmProblem& other)
    : a(other.a),
      y(other.y),
      channel(other.channel ? other.channel->clone() : nullptr),
      prior(other.prior ? other.prior->clone() : nullptr) {}

GlmProblem& GlmProblem::operator=(const GlmProblem& other) {
  if (this != &other) {
    a = other.a;
    y = other.y;
    channel = other.channel ? other.channel->clone() : nullptr;
    prior = other.prior ? other.prior->clone() : nullptr;
  }
  return *this;
}

void GlmProblem::validate() const {
  if (!channel || !prior) throw ContractError("GlmProblem: channel and prior must be set");
  if (y.size() != a.rows()) throw ContractError("GlmProblem: observation length != rows of A");
  if (a.rows() == 0 || a.cols() == 0) throw ContractError("GlmProblem: empty matrix");
  channel->validate_observation(y);
}

void GlmLoopConfig::validate() const {
  if (t_max < 1) throw ContractError("GlmLoopConfig: t_max must be >= 1");
  if (iter_slm < 1) throw ContractError("GlmLoopConfig: iter_slm must be >= 1");
  if (!(damping > 0.0) || damping > 1.0)
    throw ContractError("GlmLoopConfig: damping must be in (0, 1]");
  if (!(amp_inner_damping > 0.0) || amp_inner_damping > 1.0)
    throw ContractError("GlmLoopConfig: amp_inner_damping must be in (0, 1]");
  if (!(init_z_ext_var > 0.0) || !std::isfinite(init_z_ext_var) ||
      !std::isfinite(init_z_ext_mean))
    throw ContractError("GlmLoopConfig: invalid extrinsic initialization");
}

double dnmse_db(const Vec& x_hat, const Vec& x_true) {
  if (x_hat.size() != x_true.size()) throw ContractError("dnmse_db: length mismatch");
  const double nt = norm_sq(x_true);
  if (!(nt > 0.0)) throw InputError("dnmse_db: truth vector has zero norm");
  const double nh = norm_sq(x_hat);
  const double c = nh > 0.0 ? dot(x_hat, x_true) / nh : 0.0;
  double resid = 0.0;
  for (std::size_t i = 0; i < x_hat.size(); ++i) {
    const double d = c * x_hat[i] - x_true[i];
    resid += d * d;
  }
  if (resid == 0.0) return -320.0;
  const double db = 10.0 * std::log10(resid / nt);
  return std::max(db, -320.0);
}

namespace {

// Divergence is detected on the raw (un-debiased) estimate error
// 20 log10(||x_hat - x|| / ||x||); the debiased metric cannot exceed 0 dB by
// construction, so an exploding estimate (AMP on ill-conditioned problems
// reaches +500 dB and beyond) is only visible before debiasing. A raw
// explosion alone is not conclusive: under a sign channel the signal scale is
// unidentifiable, and SBL legitimately drifts to a large-norm estimate while
// recovering the direction to -29 dB. A run is declared divergent only when
// the raw error explodes AND the debiased error shows no recovery. Measured
// margins are wide on both sides (failed AMP: raw > +570 dB at -0.1 dB
// debiased; drifting SBL: raw ~ +110 dB at -29 dB debiased).
constexpr double kDivergenceRawErrorDb = 50.0;
constexpr double kDivergenceDnmseDb = -10.0;

double raw_error_db(const Vec& x_hat, const Vec& x_true) {
  double resid = 0.0;
  for (std::size_t i = 0; i < x_hat.size(); ++i) {
    const double d = x_hat[i] - x_true[i];
    resid += d * d;
  }
  const double nt = norm_sq(x_true);
  if (resid == 0.0) return -320.0;
  return 10.0 * std::log10(resid / nt);
}

// Output extrinsic for the LMMSE-family solvers. Two refinements over the
// generic message division, both consequences of these solvers carrying
// averaged scalar variances:
//
//  - Components whose pseudo noise lies below the averaged posterior variance
//    produce a non-positive precision difference. Those are the most
//    informative measurements; replacing them with a flat message (the
//    generic fallback) discards them and destabilizes the loop, so the
//    posterior moments pass through unsubtracted instead.
//  - When `average_variance` is set (the solver's averaged-variance
//    convention), the resulting extrinsic variances are averaged into one
//    scalar before the message is passed on, the same averaging these
//    solvers apply to every other variance vector. Without it the message
//    variance inherits component-wise noise that the scalar-precision inner
//    solver cannot absorb, and the exchange limit-cycles instead of
//    converging.
GaussianBelief z_output_extrinsic(const GaussianBelief& posterior,
                                  const GaussianBelief& pseudo, bool average_variance) {
  const std::size_t n = posterior.size();
  Vec m(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prec = 1.0 / posterior.var[i] - 1.0 / pseudo.var[i];
    if (prec <= 1.0 / GaussianBelief::kVarMax) {
      // Non-positive or clamped-flat precision: the division carries no
      // usable information for this component, and the extrapolated mean
      // would be amplified by up to kVarMax / var. Keep the posterior mean.
      v[i] = prec <= 0.0 ? posterior.var[i] : GaussianBelief::kVarMax;
      m[i] = posterior.mean[i];
      continue;
    }
    const double vi = clamp_var(1.0 / prec);
    v[i] = vi;
    m[i] = vi * (posterior.mean[i] / posterior.var[i] - pseudo.mean[i] / pseudo.var[i]);
  }
  if (average_variance) {
    double acc = 0.0;
    for (double vi : v) acc += vi;
    const double mean_var = clamp_var(acc / static_cast<double>(n));
    for (double& vi : v) vi = mean_var;
  }
  return GaussianBelief(std::move(m), std::move(v));
}

void damp_belief(GaussianBelief& next, const GaussianBelief& prev, double damping) {
  if (damping >= 1.0) return;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next.mean[i] = damping * next.mean[i] + (1.0 - damping) * prev.mean[i];
    next.var[i] = clamp_var(damping * next.var[i] + (1.0 - damping) * prev.var[i]);
  }
}

struct IterateSummary {
  double mean_avg = 0.0;
  double var_avg = 0.0;
};

IterateSummary summarize_belief(const GaussianBelief& b) {
  IterateSummary s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    s.mean_avg += b.mean[i];
    s.var_avg += b.var[i];
  }
  s.mean_avg /= static_cast<double>(b.size());
  s.var_avg /= static_cast<double>(b.size());
  return s;
}

}  // namespace

GlmTrace run(const GlmProblem& problem, const GlmLoopConfig& config, const Vec* x_true) {
  problem.validate();
  config.validate();
  if (x_true && x_true->size() != problem.n())
    throw ContractError("run: truth length != signal length");

  const std::size_t n = problem.n();
  const std::size_t m = problem.m();
  const Matrix& a = problem.a;
  const Channel& channel = *problem.channel;
  const Prior& prior = *problem.prior;

  GlmTrace trace;
  trace.iterates.reserve(static_cast<std::size_t>(config.t_max));

  // Per-solver cached operators and warm-started state.
  Matrix a_sq, gram_cache;
  AmpState amp_state;
  GampState gamp_state;
  VampState vamp_state;
  SblState sbl_state;
  switch (config.solver) {
    case Solver::GrAmp:
      a_sq = squared_entries(a);
      amp_state = amp_init_with_output(prior, n, m, config.init_z_ext_mean,
                                       config.init_z_ext_var);
      break;
    case Solver::Gamp:
      a_sq = squared_entries(a);
      gamp_state = gamp_init(prior, n, m, config.init_z_ext_mean, config.init_z_ext_var);
      break;
    case Solver::GrVamp:
      gram_cache = gram(a);
      vamp_state = vamp_init(prior, n);
      break;
    case Solver::GrSbl:
      gram_cache = gram(a);
      sbl_state = sbl_init(n, config.sbl_hyper_a, config.sbl_hyper_b);
      break;
  }

  GaussianBelief z_ext =
      GaussianBelief::constant(m, config.init_z_ext_mean, config.init_z_ext_var);
  GaussianBelief pseudo_prev;

  const auto t_start = std::chrono::steady_clock::now();
  for (int t = 1; t <= config.t_max; ++t) {
    GlmIterate it;
    bool bad = false;
    try {
      if (config.solver == Solver::Gamp) {
        for (int k = 0; k < config.iter_slm && gamp_state_finite(gamp_state); ++k)
          gamp_step(gamp_state, a, a_sq, channel, problem.y, prior);
        bad = !gamp_state_finite(gamp_state);
        it.x_hat = gamp_state.x_hat;
        if (!bad) {
          const IterateSummary s =
              summarize_belief(GaussianBelief(gamp_state.Z, gamp_state.V));
          it.z_ext_mean_avg = s.mean_avg;
          it.z_ext_var_avg = s.var_avg;
        }
      } else {
        GaussianBelief pseudo = channel.pseudo_data(problem.y, z_ext);
        // Symmetric damping of the message exchange, division-based solvers
        // only: their extrinsic messages are recomputed quantities that may
        // be blended freely. The AMP solver's messages are its iterate (Z, V)
        // by identity; blending them would desynchronize message and state,
        // so the AMP path runs undamped here (the inner stepper has its own
        // damping knob).
        const bool damp_exchange =
            config.solver != Solver::GrAmp && config.damping < 1.0;
        if (damp_exchange && t > 1) {
          for (std::size_t i = 0; i < m; ++i) {
            pseudo.mean[i] =
                config.damping * pseudo.mean[i] + (1.0 - config.damping) * pseudo_prev.mean[i];
            pseudo.var[i] = clamp_var(config.damping * pseudo.var[i] +
                                      (1.0 - config.damping) * pseudo_prev.var[i]);
          }
        }
        pseudo_prev = pseudo;

        GaussianBelief candidate;
        switch (config.solver) {
          case Solver::GrAmp: {
            for (int k = 0; k < config.iter_slm && amp_state_finite(amp_state); ++k)
              amp_step(amp_state, a, a_sq, pseudo.mean, pseudo.var, prior,
                       config.amp_inner_damping);
            bad = !amp_state_finite(amp_state);
            it.x_hat = amp_state.x_hat;
            if (!bad) candidate = amp_extrinsic(amp_state);
            break;
          }
          case Solver::GrVamp: {
            Vec x_hat2;
            Matrix c2;
            for (int k = 0; k < config.iter_slm; ++k) {
              VampDenoiseResult den =
                  vamp_denoise_half(vamp_state.r1, vamp_state.gamma1, prior);
              VampLmmseResult lin =
                  vamp_lmmse_half(den.r2, den.gamma2, a, pseudo.mean, pseudo.var);
              vamp_state.r1 = std::move(lin.r1_next);
              vamp_state.gamma1 = lin.gamma1_next;
              vamp_state.x_hat1 = std::move(den.x_hat1);
              x_hat2 = std::move(lin.x_hat2);
              c2 = std::move(lin.c2);
            }
            vamp_state.x_hat2 = x_hat2;
            double tr = 0.0;
            for (std::size_t i = 0; i < n; ++i) tr += c2(i, i);
            vamp_state.trace_c2 = tr;
            it.x_hat = vamp_state.x_hat1;
            const ZPosterior zp = vamp_z_posterior(x_hat2, c2, a, &gram_cache);
            bad = !all_finite(zp.mean) || !std::isfinite(zp.var);
            if (!bad) {
              const GaussianBelief post(zp.mean, Vec(m, zp.var));
              candidate = z_output_extrinsic(post, pseudo, /*average_variance=*/true);
            }
            break;
          }
          case Solver::GrSbl: {
            if (config.sbl_reset_alpha)
              sbl_state = sbl_init(n, config.sbl_hyper_a, config.sbl_hyper_b);
            SblLmmseResult lin;
            for (int k = 0; k < config.iter_slm; ++k) {
              lin = sbl_lmmse(sbl_state.alpha, a, pseudo.mean, pseudo.var);
              sbl_state.alpha =
                  sbl_em_update(lin.x_hat2, lin.c2, sbl_state.hyper_a, sbl_state.hyper_b);
            }
            it.x_hat = lin.x_hat2;
            bad = !all_finite(lin.x_hat2);
            if (!bad) {
              GaussianBelief post;
              if (config.sbl_per_component_variance) {
                post = GaussianBelief(matvec(a, lin.x_hat2),
                                      sbl_z_posterior_diag(lin.x_hat2, lin.c2, a));
              } else {
                const ZPosterior zp = sbl_z_posterior(lin.x_hat2, lin.c2, a, &gram_cache);
                post = GaussianBelief(zp.mean, Vec(m, zp.var));
              }
              candidate = z_output_extrinsic(post, pseudo,
                                             !config.sbl_per_component_variance);
            }
            break;
          }
          case Solver::Gamp:
            break;  // handled above
        }

        if (!bad) {
          if (damp_exchange) damp_belief(candidate, z_ext, config.damping);
          z_ext = std::move(candidate);
          const IterateSummary s = summarize_belief(z_ext);
          it.z_ext_mean_avg = s.mean_avg;
          it.z_ext_var_avg = s.var_avg;
        }
      }
    } catch (const Error&) {
      // Inner-solver failure (singular system, out-of-range divergence
      // average, ...) counts as divergence of this run, not a hard error.
      bad = true;
      if (it.x_hat.empty()) it.x_hat.assign(n, std::numeric_limits<double>::quiet_NaN());
    }

    bad = bad || !all_finite(it.x_hat);
    if (!bad && x_true) {
      it.dnmse_db = dnmse_db(it.x_hat, *x_true);
      if (raw_error_db(it.x_hat, *x_true) > kDivergenceRawErrorDb &&
          it.dnmse_db > kDivergenceDnmseDb)
        bad = true;
    } else if (x_true) {
      it.dnmse_db = std::numeric_limits<double>::quiet_NaN();
    }

    it.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                           t_start)
                     .count();
    trace.iterates.push_back(std::move(it));
    if (bad) {
      trace.diverged = true;
      trace.diverged_at = t;
      break;
    }
  }
  return trace;
}

}  // namespace glmt
