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
#include "synth.hpp"

#include <cmath>

#include "errors.hpp"

namespace glmt {

namespace {

// Stream tags for seed splitting within one problem draw.
enum : std::uint64_t { kStreamLeftFactor = 1, kStreamRightFactor = 2, kStreamNoise = 3 };

}  // namespace

Matrix haar_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ContractError("haar_orthogonal: n must be >= 1");
  Rng rng(seed);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
  Matrix q, r;
  householder_qr(g, q, r);
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
  }
  return q;
}

Matrix conditioned_matrix(const MatrixSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw ContractError("conditioned_matrix: empty shape");
  if (!(spec.kappa >= 1.0) || !std::isfinite(spec.kappa))
    throw ContractError("conditioned_matrix: kappa must be >= 1");
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  const std::size_t r = std::min(m, n);

  std::vector<long double> s(r);
  if (r == 1) {
    s[0] = 1.0L;
  } else {
    const long double lk = std::log(static_cast<long double>(spec.kappa));
    for (std::size_t i = 0; i < r; ++i)
      s[i] = std::exp(-lk * static_cast<long double>(i) / static_cast<long double>(r - 1));
  }
  long double energy = 0.0L;
  for (long double v : s) energy += v * v;
  const long double scale = std::sqrt(static_cast<long double>(n) / energy);
  for (long double& v : s) v *= scale;

  const Matrix u = haar_orthogonal(m, split_seed(spec.seed, kStreamLeftFactor));
  const Matrix v = haar_orthogonal(n, split_seed(spec.seed, kStreamRightFactor));

  // A_ij = sum_k U_ik s_k V_jk, accumulated in extended precision so the
  // smallest singular value survives the summation at large kappa.
  Matrix a(m, n);
  std::vector<long double> col(r);
  for (std::size_t i = 0; i < m; ++i) {
    const double* urow = u.row(i);
    for (std::size_t k = 0; k < r; ++k) col[k] = s[k] * urow[k];
    for (std::size_t j = 0; j < n; ++j) {
      const double* vrow = v.row(j);
      long double acc = 0.0L;
      for (std::size_t k = 0; k < r; ++k) acc += col[k] * vrow[k];
      a(i, j) = static_cast<double>(acc);
    }
  }
  return a;
}

Vec sample_signal(const SignalSpec& spec) {
  if (spec.n == 0) throw ContractError("sample_signal: n must be >= 1");
  if (!(spec.rho > 0.0) || spec.rho > 1.0)
    throw ContractError("sample_signal: rho must be in (0, 1]");
  const double slab_var = spec.slab_var > 0.0 ? spec.slab_var : 1.0 / spec.rho;
  const double slab_std = std::sqrt(slab_var);
  Rng rng(spec.seed);
  Vec x(spec.n, 0.0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double u = rng.uniform01();
    const double g = rng.normal();  // always drawn: keeps streams aligned per index
    if (u <= spec.rho) x[i] = slab_std * g;
  }
  return x;
}

Vec onebit_measure(const Vec& z, double sigma, Rng& noise_rng) {
  Vec y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double v = z[i] + sigma * noise_rng.normal();
    y[i] = (v >= 0.0) ? 1.0 : -1.0;  // sign(0) := +1
  }
  return y;
}

OneBitProblem make_onebit_problem_from(Matrix a, Vec x, double rho, double slab_var,
                                       double snr_db, std::uint64_t noise_seed) {
  if (!std::isfinite(snr_db)) throw ContractError("make_onebit_problem: snr_db must be finite");
  const std::size_t m = a.rows();
  const Vec z = matvec(a, x);
  const double energy = norm_sq(z);
  if (!(energy > 0.0)) throw SolverError("make_onebit_problem: A x has zero norm");
  const double sigma2 = energy / (static_cast<double>(m) * std::pow(10.0, snr_db / 10.0));
  const double sigma = std::sqrt(sigma2);

  Rng noise(noise_seed);
  Vec y = onebit_measure(z, sigma, noise);

  OneBitProblem out;
  out.problem = GlmProblem(std::move(a), std::move(y), std::make_unique<ProbitChannel>(sigma),
                           std::make_unique<BernoulliGaussianPrior>(rho, slab_var));
  out.x_true = std::move(x);
  out.sigma = sigma;
  return out;
}

OneBitProblem make_onebit_problem(const MatrixSpec& mspec, const SignalSpec& sspec,
                                  double snr_db) {
  MatrixSpec ms = mspec;
  SignalSpec ss = sspec;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix a = conditioned_matrix(ms);
    Vec x = sample_signal(ss);
    try {
      return make_onebit_problem_from(std::move(a), std::move(x), ss.rho, ss.slab_var, snr_db,
                                      split_seed(ms.seed ^ ss.seed, kStreamNoise));
    } catch (const SolverError&) {
      // A x == 0 (all-zero signal draw): retry with incremented seeds.
      ms.seed += 1;
      ss.seed += 1;
    }
  }
  throw SolverError("make_onebit_problem: could not draw a non-degenerate instance");
}

}  // namespace glmt
