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
#include "priors.hpp"

#include <cmath>

#include "errors.hpp"

namespace glmt {

void Prior::check_inputs(const Vec& r, const Vec& sigma2) {
  if (r.size() != sigma2.size()) throw ContractError("denoise: r/sigma2 length mismatch");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(sigma2[i]) || sigma2[i] <= 0.0)
      throw ContractError("denoise: non-finite or non-positive input");
  }
}

Vec Prior::divergence(const Vec& r, const Vec& sigma2) const {
  Vec x_hat, tau;
  denoise(r, sigma2, x_hat, tau);
  Vec d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) d[i] = tau[i] / sigma2[i];
  return d;
}

BernoulliGaussianPrior::BernoulliGaussianPrior(double rho, double slab_var)
    : rho_(rho), slab_var_(slab_var > 0.0 ? slab_var : 1.0 / rho) {
  if (!(rho > 0.0) || rho > 1.0 || !std::isfinite(rho))
    throw ContractError("BernoulliGaussianPrior: rho must be in (0, 1]");
  if (!std::isfinite(slab_var_) || slab_var_ <= 0.0)
    throw ContractError("BernoulliGaussianPrior: slab variance must be positive");
}

void BernoulliGaussianPrior::denoise_one(double r, double s2, double& x_hat, double& tau) const {
  const double v0 = slab_var_;
  const double vt = v0 * s2 / (v0 + s2);       // slab posterior variance
  const double mt = r * v0 / (v0 + s2);        // slab posterior mean
  double pi = 1.0;
  if (rho_ < 1.0) {
    // Log of spike/slab evidence ratio; kept in log space so huge |r| or
    // tiny s2 cannot overflow the density quotient.
    double l = std::log((1.0 - rho_) / rho_) + 0.5 * std::log1p(v0 / s2) -
               0.5 * r * r * (v0 / (s2 * (s2 + v0)));
    if (l > 600.0) l = 600.0;  // keeps pi representable (no exact zero)
    pi = 1.0 / (1.0 + std::exp(l));
  }
  x_hat = pi * mt;
  tau = pi * vt + pi * (1.0 - pi) * mt * mt;
}

void BernoulliGaussianPrior::denoise(const Vec& r, const Vec& sigma2, Vec& x_hat,
                                     Vec& tau) const {
  check_inputs(r, sigma2);
  x_hat.resize(r.size());
  tau.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) denoise_one(r[i], sigma2[i], x_hat[i], tau[i]);
}

GaussianPrior::GaussianPrior(double mean, double var) : mean_(mean), var_(var) {
  if (!std::isfinite(mean) || !std::isfinite(var) || var <= 0.0)
    throw ContractError("GaussianPrior: variance must be positive and finite");
}

void GaussianPrior::denoise(const Vec& r, const Vec& sigma2, Vec& x_hat, Vec& tau) const {
  check_inputs(r, sigma2);
  x_hat.resize(r.size());
  tau.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double v = var_ * sigma2[i] / (var_ + sigma2[i]);
    x_hat[i] = v * (mean_ / var_ + r[i] / sigma2[i]);
    tau[i] = v;
  }
}

}  // namespace glmt
