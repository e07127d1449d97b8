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

#include "channels.hpp"
#include "priors.hpp"

namespace glmt {

/// AMP iterate for the linear model with per-component noise. Z and V are the
/// output-side mean/variance of z = A x; they double as the extrinsic message
/// to the channel stage, so amp_extrinsic() returns them verbatim.
struct AmpState {
  Vec x_hat;  // N: signal estimate
  Vec tau;    // N: signal posterior variance
  Vec Z;      // M: output mean (carries the Onsager memory)
  Vec V;      // M: output variance
  Vec Sigma;  // N: last pseudo-observation variance (variable-node pass)
  Vec r;      // N: last pseudo-observation mean
};

/// Standard initialization for a standalone linear-model run:
/// x_hat = prior mean, tau = prior variance, Z = 0, V = A_sq tau.
AmpState amp_init(const Matrix& a_sq, const Prior& prior, std::size_t n, std::size_t m);

/// Initialization with prescribed output message (Z0, V0); used by the outer
/// turbo loop, whose configured flat message seeds the output side.
AmpState amp_init_with_output(const Prior& prior, std::size_t n, std::size_t m, double z0,
                              double v0);

/// One AMP iteration with heteroscedastic noise sigma2 (per component).
/// damping in (0, 1] blends (x_hat, Z, V) with the previous iterate;
/// 1.0 disables it. The state may become non-finite on divergent problems;
/// callers check amp_state_finite and record the failure rather than abort.
void amp_step(AmpState& state, const Matrix& a, const Matrix& a_sq, const Vec& y,
              const Vec& sigma2, const Prior& prior, double damping = 1.0);

/// Output extrinsic message: exactly (Z, V). The Gaussian division against
/// the pseudo observation cancels for AMP, so no division is performed.
/// Throws ContractError if the state is not finite.
GaussianBelief amp_extrinsic(const AmpState& state);

bool amp_state_finite(const AmpState& state);

/// Direct generalized-AMP iterate: the channel posterior is folded into the
/// linear update through the score pair (s_hat, tau_s) instead of going
/// through an explicit pseudo observation.
struct GampState {
  Vec x_hat;  // N
  Vec tau;    // N
  Vec Z;      // M
  Vec V;      // M
  Vec s_hat;  // M: score mean
  Vec tau_s;  // M: score precision
};

GampState gamp_init(const Prior& prior, std::size_t n, std::size_t m, double z0, double v0);

/// One generalized-AMP iteration:
///   s_hat = (z_post - Z) / V,    tau_s = (V - v_post) / V^2,
///   Sigma_i = [sum_a A_ai^2 tau_s_a]^-1,
///   r_i = x_hat_i + Sigma_i sum_a A_ai s_hat_a,
///   (x_hat, tau) = denoise(r, Sigma),
///   V_a = sum_i A_ai^2 tau_i,   Z_a = sum_i A_ai x_hat_i - V_a s_hat_a,
/// with (z_post, v_post) the channel posterior under prior (Z, V).
void gamp_step(GampState& state, const Matrix& a, const Matrix& a_sq, const Channel& channel,
               const Vec& y, const Prior& prior);

bool gamp_state_finite(const GampState& state);

}  // namespace glmt
