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
#include "sbl.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace glmt {

SblState sbl_init(std::size_t n, double hyper_a, double hyper_b) {
  if (hyper_a < 0.0 || hyper_b < 0.0 || !std::isfinite(hyper_a) || !std::isfinite(hyper_b))
    throw ContractError("sbl_init: hyperparameters must be non-negative");
  SblState s;
  s.alpha.assign(n, 1.0);
  s.hyper_a = hyper_a;
  s.hyper_b = hyper_b;
  return s;
}

SblLmmseResult sbl_lmmse(const Vec& alpha, const Matrix& a, const Vec& y, const Vec& sigma2) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (alpha.size() != n || y.size() != m || sigma2.size() != m)
    throw ContractError("sbl_lmmse: dimension mismatch");
  for (double al : alpha)
    if (!(al > 0.0) || !std::isfinite(al))
      throw ContractError("sbl_lmmse: alpha must be positive and finite");

  Vec inv_noise(m);
  for (std::size_t aa = 0; aa < m; ++aa) inv_noise[aa] = 1.0 / sigma2[aa];

  Matrix s = weighted_gram(a, inv_noise);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += alpha[i];

  SblLmmseResult out;
  try {
    out.c2 = spd_inverse(s);
  } catch (const SolverError& e) {
    throw SolverError(std::string("sbl_lmmse: singular LMMSE system: ") + e.what());
  }
  out.x_hat2 = matvec(out.c2, weighted_tmatvec(a, inv_noise, y));
  return out;
}

Vec sbl_em_update(const Vec& x_hat2, const Matrix& c2, double hyper_a, double hyper_b) {
  const std::size_t n = x_hat2.size();
  if (c2.rows() != n || c2.cols() != n) throw ContractError("sbl_em_update: shape mismatch");
  Vec alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = x_hat2[i] * x_hat2[i] + c2(i, i) + 2.0 * hyper_b;
    double al = (1.0 + 2.0 * hyper_a) / denom;  // denom == 0 -> inf -> clamped below
    if (!(al > kAlphaMin)) al = kAlphaMin;
    if (!(al < kAlphaMax)) al = kAlphaMax;
    alpha[i] = al;
  }
  return alpha;
}

ZPosterior sbl_z_posterior(const Vec& x_hat2, const Matrix& c2, const Matrix& a,
                           const Matrix* gram_cache) {
  return vamp_z_posterior(x_hat2, c2, a, gram_cache);
}

Vec sbl_z_posterior_diag(const Vec& x_hat2, const Matrix& c2, const Matrix& a) {
  if (x_hat2.size() != a.cols()) throw ContractError("sbl_z_posterior_diag: dimension mismatch");
  return rowwise_quadratic(a, c2);
}

}  // namespace glmt
