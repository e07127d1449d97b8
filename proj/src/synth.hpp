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

#include "glm.hpp"
#include "rng.hpp"

namespace glmt {

/// Orthogonal matrix distributed by Haar measure: QR of an i.i.d. standard
/// normal matrix with the columns sign-corrected by the R diagonal. Without
/// the sign correction the QR factor is not Haar distributed.
Matrix haar_orthogonal(std::size_t n, std::uint64_t seed);

struct MatrixSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  double kappa = 1.0;  // target condition number, >= 1
  std::uint64_t seed = 0;
};

/// M x N matrix with prescribed condition number: A = U S V^T with Haar
/// factors and geometrically spaced singular values s_i = kappa^{-(i-1)/(r-1)},
/// globally rescaled so sum s_i^2 = N (unit-energy rows on average). The
/// product is accumulated in extended precision so the stored matrix realizes
/// the target ratio to near machine precision even at kappa = 1e6.
Matrix conditioned_matrix(const MatrixSpec& spec);

struct SignalSpec {
  std::size_t n = 0;
  double rho = 0.1;       // sparsity in (0, 1]
  double slab_var = 0.0;  // <= 0 defaults to 1/rho
  std::uint64_t seed = 0;
};

/// i.i.d. spike-and-slab draw: zero with probability 1-rho, else N(0, slab_var).
Vec sample_signal(const SignalSpec& spec);

struct OneBitProblem {
  GlmProblem problem;
  Vec x_true;
  double sigma = 0.0;  // realized pre-quantization noise std
};

/// Sign measurements of z + w for given z and noise level; sign(0) maps to +1.
Vec onebit_measure(const Vec& z, double sigma, Rng& noise_rng);

/// Assembles the 1-bit problem from explicit ingredients. The noise variance
/// is calibrated per realization: sigma^2 = ||A x||^2 / (M 10^(snr_db/10)),
/// removing trial-to-trial SNR jitter.
OneBitProblem make_onebit_problem_from(Matrix a, Vec x, double rho, double slab_var,
                                       double snr_db, std::uint64_t noise_seed);

/// Draws matrix and signal from their specs and assembles the problem.
/// All randomness splits off the spec seeds; a zero A x (measure zero)
/// regenerates with incremented seeds.
OneBitProblem make_onebit_problem(const MatrixSpec& mspec, const SignalSpec& sspec,
                                  double snr_db);

}  // namespace glmt
