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
#include "amp.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace glmt {

namespace {

void check_problem_dims(const Matrix& a, const Matrix& a_sq, const Vec& y, std::size_t n,
                        std::size_t m) {
  if (a.rows() != m || a.cols() != n || a_sq.rows() != m || a_sq.cols() != n ||
      y.size() != m)
    throw ContractError("amp: problem dimension mismatch");
}

void blend(Vec& current, const Vec& previous, double damping) {
  if (damping >= 1.0) return;
  for (std::size_t i = 0; i < current.size(); ++i)
    current[i] = damping * current[i] + (1.0 - damping) * previous[i];
}

// The variable-node pass can produce non-positive or non-finite pseudo
// variances once a run diverges. Poisoning the estimate keeps the step
// non-throwing so the benchmark records the failure and moves on.
bool usable_pseudo_obs(const Vec& r, const Vec& sigma) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!std::isfinite(r[i]) || !std::isfinite(sigma[i]) || sigma[i] <= 0.0) return false;
  return true;
}

void poison(Vec& x) {
  if (!x.empty()) x[0] = std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

AmpState amp_init(const Matrix& a_sq, const Prior& prior, std::size_t n, std::size_t m) {
  AmpState s;
  s.x_hat.assign(n, prior.prior_mean());
  s.tau.assign(n, prior.prior_variance());
  s.Z.assign(m, 0.0);
  s.V = matvec(a_sq, s.tau);
  s.Sigma.assign(n, 0.0);
  s.r.assign(n, 0.0);
  return s;
}

AmpState amp_init_with_output(const Prior& prior, std::size_t n, std::size_t m, double z0,
                              double v0) {
  AmpState s;
  s.x_hat.assign(n, prior.prior_mean());
  s.tau.assign(n, prior.prior_variance());
  s.Z.assign(m, z0);
  s.V.assign(m, v0);
  s.Sigma.assign(n, 0.0);
  s.r.assign(n, 0.0);
  return s;
}

void amp_step(AmpState& state, const Matrix& a, const Matrix& a_sq, const Vec& y,
              const Vec& sigma2, const Prior& prior, double damping) {
  const std::size_t n = state.x_hat.size();
  const std::size_t m = state.Z.size();
  check_problem_dims(a, a_sq, y, n, m);
  if (sigma2.size() != m) throw ContractError("amp_step: sigma2 length mismatch");

  // Per-row precision g_a = 1/(sigma2_a + V_a) and scaled residual h_a.
  Vec g(m), h(m);
  for (std::size_t aa = 0; aa < m; ++aa) {
    g[aa] = 1.0 / (sigma2[aa] + state.V[aa]);
    h[aa] = (y[aa] - state.Z[aa]) * g[aa];
  }

  // Variable-node pass: Sigma_i and r_i.
  Vec den(n, 0.0), num(n, 0.0);
  for (std::size_t aa = 0; aa < m; ++aa) {
    const double* arow = a.row(aa);
    const double* srow = a_sq.row(aa);
    const double ga = g[aa];
    const double ha = h[aa];
    for (std::size_t i = 0; i < n; ++i) {
      den[i] += srow[i] * ga;
      num[i] += arow[i] * ha;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    state.Sigma[i] = 1.0 / den[i];
    state.r[i] = state.x_hat[i] + state.Sigma[i] * num[i];
  }
  if (!usable_pseudo_obs(state.r, state.Sigma)) {
    poison(state.x_hat);
    return;
  }

  Vec x_new, tau_new;
  prior.denoise(state.r, state.Sigma, x_new, tau_new);
  blend(x_new, state.x_hat, damping);
  state.x_hat = std::move(x_new);
  state.tau = std::move(tau_new);

  // Factor-node pass: V_a and Z_a with the Onsager correction -V_a h_a,
  // which uses the residual formed from the previous (Z, V).
  Vec v_new(m, 0.0), z_new(m, 0.0);
  for (std::size_t aa = 0; aa < m; ++aa) {
    const double* arow = a.row(aa);
    const double* srow = a_sq.row(aa);
    double va = 0.0, za = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      va += srow[i] * state.tau[i];
      za += arow[i] * state.x_hat[i];
    }
    v_new[aa] = va;
    z_new[aa] = za - va * h[aa];
  }
  blend(v_new, state.V, damping);
  blend(z_new, state.Z, damping);
  state.V = std::move(v_new);
  state.Z = std::move(z_new);
}

bool amp_state_finite(const AmpState& s) {
  return all_finite(s.x_hat) && all_finite(s.tau) && all_finite(s.Z) && all_finite(s.V);
}

GaussianBelief amp_extrinsic(const AmpState& state) {
  if (!amp_state_finite(state)) throw ContractError("amp_extrinsic: state is not finite");
  return GaussianBelief(state.Z, state.V);
}

GampState gamp_init(const Prior& prior, std::size_t n, std::size_t m, double z0, double v0) {
  GampState s;
  s.x_hat.assign(n, prior.prior_mean());
  s.tau.assign(n, prior.prior_variance());
  s.Z.assign(m, z0);
  s.V.assign(m, v0);
  s.s_hat.assign(m, 0.0);
  s.tau_s.assign(m, 0.0);
  return s;
}

void gamp_step(GampState& state, const Matrix& a, const Matrix& a_sq, const Channel& channel,
               const Vec& y, const Prior& prior) {
  const std::size_t n = state.x_hat.size();
  const std::size_t m = state.Z.size();
  check_problem_dims(a, a_sq, y, n, m);

  // The belief constructor clamps variances; reuse the clamped values below
  // so (V - v_post) >= 0 holds against the prior the channel actually saw.
  const GaussianBelief prior_z(state.Z, state.V);
  const GaussianBelief post = channel.posterior_moments(y, prior_z);
  for (std::size_t aa = 0; aa < m; ++aa) {
    const double v_old = prior_z.var[aa];
    state.s_hat[aa] = (post.mean[aa] - state.Z[aa]) / v_old;
    state.tau_s[aa] = (v_old - post.var[aa]) / (v_old * v_old);
  }

  Vec den(n, 0.0), num(n, 0.0);
  for (std::size_t aa = 0; aa < m; ++aa) {
    const double* arow = a.row(aa);
    const double* srow = a_sq.row(aa);
    const double ts = state.tau_s[aa];
    const double sh = state.s_hat[aa];
    for (std::size_t i = 0; i < n; ++i) {
      den[i] += srow[i] * ts;
      num[i] += arow[i] * sh;
    }
  }
  Vec sigma(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = 1.0 / den[i];
    r[i] = state.x_hat[i] + sigma[i] * num[i];
  }
  if (!usable_pseudo_obs(r, sigma)) {
    poison(state.x_hat);
    return;
  }

  prior.denoise(r, sigma, state.x_hat, state.tau);

  for (std::size_t aa = 0; aa < m; ++aa) {
    const double* arow = a.row(aa);
    const double* srow = a_sq.row(aa);
    double va = 0.0, za = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      va += srow[i] * state.tau[i];
      za += arow[i] * state.x_hat[i];
    }
    state.V[aa] = va;
    state.Z[aa] = za - va * state.s_hat[aa];
  }
}

bool gamp_state_finite(const GampState& s) {
  return all_finite(s.x_hat) && all_finite(s.tau) && all_finite(s.Z) && all_finite(s.V) &&
         all_finite(s.s_hat) && all_finite(s.tau_s);
}

}  // namespace glmt
