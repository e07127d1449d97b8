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

#include <functional>

#include "priors.hpp"

// Independent reference computations used to cross-check the closed-form
// implementations: numerical quadrature for channel and denoiser moments,
// central finite differences for denoiser derivatives, and a Gauss-Jordan
// solver for the LMMSE systems. Nothing here shares a code path with the
// implementation it verifies (the quadrature sees only raw densities, the
// dense solver does not use the Cholesky machinery).

namespace glmt::oracle {

/// Adaptive Simpson integration with absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                 int max_depth = 60);

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

/// Posterior moments of z under likelihood Phi(y z / sigma) and prior N(m, v)
/// by quadrature over z in m +/- 12 sqrt(v), standardized for scale.
Moments probit_moments(double y, double m, double v, double sigma);

/// Posterior moments of x under a spike-and-slab prior and pseudo-observation
/// N(x; r, s2); the slab integral is evaluated by quadrature, the point mass
/// analytically.
Moments bernoulli_gauss_moments(double rho, double slab_var, double r, double s2);

/// Central finite difference of the denoiser posterior mean at (r, s2),
/// step 1e-6 max(1, |r|).
double denoiser_derivative_fd(const Prior& prior, double r, double s2);

/// Gauss-Jordan solve with partial pivoting; throws SolverError when singular.
Vec dense_solve(Matrix s, Vec b);

/// Gauss-Jordan inverse with partial pivoting.
Matrix dense_inverse(Matrix s);

/// Built-in verification suites (moment oracles, LMMSE oracles, the
/// generalized-AMP equivalence, matrix generation, message algebra).
/// Returns the number of failed suites; prints one line per suite when
/// verbose is true.
int selftest(bool verbose);

}  // namespace glmt::oracle
