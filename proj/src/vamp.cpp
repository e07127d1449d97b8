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
#include "vamp.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace glmt {

VampState vamp_init(const Prior& prior, std::size_t n) {
  VampState s;
  s.r1.assign(n, 0.0);
  s.gamma1 = 1.0 / prior.prior_variance();
  s.x_hat1.assign(n, 0.0);
  s.x_hat2.assign(n, 0.0);
  return s;
}

VampDenoiseResult vamp_denoise_half(const Vec& r1, double gamma1, const Prior& prior) {
  if (!(gamma1 > 0.0) || !std::isfinite(gamma1))
    throw ContractError("vamp_denoise_half: gamma1 must be positive");
  const std::size_t n = r1.size();

  VampDenoiseResult out;
  Vec sigma(n, 1.0 / gamma1);
  Vec tau;
  prior.denoise(r1, sigma, out.x_hat1, tau);

  double mean_tau = 0.0;
  for (double t : tau) mean_tau += t;
  mean_tau /= static_cast<double>(n);
  out.alpha1 = mean_tau * gamma1;  // <tau>/Sigma with Sigma = 1/gamma1
  // alpha1 > 1 is legitimate for the spike-slab denoiser: its posterior is
  // bimodal around the spike/slab ambiguity zone and the variance there can
  // exceed the pseudo-prior variance. The subtraction below then turns
  // non-positive and the precision floor takes over.
  if (!(out.alpha1 > 0.0) || !std::isfinite(out.alpha1))
    throw ContractError("vamp_denoise_half: divergence average " +
                        std::to_string(out.alpha1) + " not positive");

  const double eta1 = gamma1 / out.alpha1;
  double gamma2 = eta1 - gamma1;
  if (!(gamma2 > 0.0)) gamma2 = kGammaMin;
  out.gamma2 = gamma2;
  out.r2.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.r2[i] = (eta1 * out.x_hat1[i] - gamma1 * r1[i]) / gamma2;
  return out;
}

VampLmmseResult vamp_lmmse_half(const Vec& r2, double gamma2, const Matrix& a, const Vec& y,
                                const Vec& sigma2) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (r2.size() != n || y.size() != m || sigma2.size() != m)
    throw ContractError("vamp_lmmse_half: dimension mismatch");
  if (!(gamma2 > 0.0) || !std::isfinite(gamma2))
    throw ContractError("vamp_lmmse_half: gamma2 must be positive");

  Vec inv_noise(m);
  for (std::size_t aa = 0; aa < m; ++aa) inv_noise[aa] = 1.0 / sigma2[aa];

  Matrix s = weighted_gram(a, inv_noise);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += gamma2;

  VampLmmseResult out;
  try {
    out.c2 = spd_inverse(s);
  } catch (const SolverError& e) {
    throw SolverError(std::string("vamp_lmmse_half: singular LMMSE system (gamma2 = ") +
                      std::to_string(gamma2) + "): " + e.what());
  }

  Vec rhs = weighted_tmatvec(a, inv_noise, y);
  for (std::size_t i = 0; i < n; ++i) rhs[i] += gamma2 * r2[i];
  out.x_hat2 = matvec(out.c2, rhs);

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += out.c2(i, i);
  out.alpha2 = gamma2 * trace / static_cast<double>(n);

  const double eta2 = gamma2 / out.alpha2;
  double gamma1_next = eta2 - gamma2;
  if (!(gamma1_next > 0.0)) gamma1_next = kGammaMin;
  out.gamma1_next = gamma1_next;
  out.r1_next.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.r1_next[i] = (eta2 * out.x_hat2[i] - gamma2 * r2[i]) / gamma1_next;
  return out;
}

ZPosterior vamp_z_posterior(const Vec& x_hat2, const Matrix& c2, const Matrix& a,
                            const Matrix* gram_cache) {
  if (x_hat2.size() != a.cols() || c2.rows() != a.cols() || c2.cols() != a.cols())
    throw ContractError("vamp_z_posterior: dimension mismatch");
  ZPosterior out;
  out.mean = matvec(a, x_hat2);
  Matrix local;
  const Matrix* g = gram_cache;
  if (g == nullptr) {
    local = gram(a);
    g = &local;
  }
  out.var = trace_product_sym(c2, *g) / static_cast<double>(a.rows());
  return out;
}

}  // namespace glmt
