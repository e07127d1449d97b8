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

#include "priors.hpp"

namespace glmt {

/// Precision floor applied when an extrinsic precision subtraction turns
/// non-positive inside VAMP.
constexpr double kGammaMin = 1e-11;

/// Persisted VAMP iterate: the denoiser-side message (r1, gamma1) plus the
/// latest estimates from both halves.
struct VampState {
  Vec r1;
  double gamma1 = 1.0;
  Vec x_hat1;          // denoised estimate (the reported signal estimate)
  Vec x_hat2;          // LMMSE posterior mean
  double trace_c2 = 0.0;  // trace of the LMMSE posterior covariance
};

/// r1 = 0, gamma1 = prior precision 1/Var_p0(x).
VampState vamp_init(const Prior& prior, std::size_t n);

struct VampDenoiseResult {
  Vec x_hat1;
  double alpha1 = 0.0;  // averaged denoiser divergence, positive
  Vec r2;
  double gamma2 = 0.0;
};

/// Denoising half:
///   x1 = denoise(r1, 1/gamma1); alpha1 = <d denoise/d r>;
///   eta1 = gamma1/alpha1; gamma2 = eta1 - gamma1 (floored at kGammaMin).
///   r2 = (eta1 x1 - gamma1 r1)/gamma2.
/// alpha1 usually lies in (0, 1] but may exceed 1 for multimodal priors
/// (spike-slab in the ambiguity zone), in which case the precision floor
/// takes over. Throws ContractError only when alpha1 is not positive.
VampDenoiseResult vamp_denoise_half(const Vec& r1, double gamma1, const Prior& prior);

struct VampLmmseResult {
  Vec x_hat2;
  Matrix c2;  // posterior covariance (A^T D A + gamma2 I)^-1, D = diag(1/sigma2)
  double alpha2 = 0.0;
  Vec r1_next;
  double gamma1_next = 0.0;
};

/// LMMSE half with per-component noise:
///   C2 = (A^T D A + gamma2 I)^-1, x2 = C2 (A^T D y + gamma2 r2),
///   alpha2 = gamma2 trace(C2)/N; eta2 = gamma2/alpha2;
///   gamma1' = eta2 - gamma2 (floored); r1' = (eta2 x2 - gamma2 r2)/gamma1'.
/// Throws SolverError with a pivot diagnostic when the system is numerically
/// singular.
VampLmmseResult vamp_lmmse_half(const Vec& r2, double gamma2, const Matrix& a, const Vec& y,
                                const Vec& sigma2);

struct ZPosterior {
  Vec mean;        // A x2
  double var = 0;  // trace(A C2 A^T) / M, broadcast by the caller
};

/// Posterior moments of z = A x from the LMMSE half. The trace is evaluated
/// as trace(C2 A^T A) so the M x M product is never materialized; pass the
/// cached Gram matrix when available.
ZPosterior vamp_z_posterior(const Vec& x_hat2, const Matrix& c2, const Matrix& a,
                            const Matrix* gram_cache = nullptr);

}  // namespace glmt
