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

#include "vamp.hpp"  // ZPosterior, shared z-extraction shape

namespace glmt {

constexpr double kAlphaMin = 1e-11;
constexpr double kAlphaMax = 1e11;

/// Sparse-Bayesian-learning iterate: per-component precisions alpha under a
/// Gamma(a, b) hyperprior. Defaults are near-uninformative.
struct SblState {
  Vec alpha;           // N, all positive
  double hyper_a = 1e-10;
  double hyper_b = 1e-10;
};

/// alpha = 1 uniformly.
SblState sbl_init(std::size_t n, double hyper_a = 1e-10, double hyper_b = 1e-10);

struct SblLmmseResult {
  Vec x_hat2;
  Matrix c2;  // (A^T D A + diag(alpha))^-1
};

/// LMMSE estimate of x under prior N(0, diag(alpha)^-1) and per-component
/// noise: C2 = (A^T D A + diag(alpha))^-1, x2 = C2 A^T D y.
SblLmmseResult sbl_lmmse(const Vec& alpha, const Matrix& a, const Vec& y, const Vec& sigma2);

/// EM update alpha_i = (1 + 2a) / (x2_i^2 + C2_ii + 2b), clamped to
/// [kAlphaMin, kAlphaMax]; clamping absorbs pruned components.
Vec sbl_em_update(const Vec& x_hat2, const Matrix& c2, double hyper_a, double hyper_b);

/// Averaged z posterior, same extraction as the VAMP side.
ZPosterior sbl_z_posterior(const Vec& x_hat2, const Matrix& c2, const Matrix& a,
                           const Matrix* gram_cache = nullptr);

/// Per-component alternative: the diagonal of A C2 A^T.
Vec sbl_z_posterior_diag(const Vec& x_hat2, const Matrix& c2, const Matrix& a);

}  // namespace glmt
