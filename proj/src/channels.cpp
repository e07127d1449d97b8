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
#include "channels.hpp"

#include <cmath>

#include "errors.hpp"
#include "special.hpp"

namespace glmt {

GaussianBelief Channel::pseudo_data(const Vec& y, const GaussianBelief& prior) const {
  return extrinsic(posterior_moments(y, prior), prior);
}

void Channel::validate_observation(const Vec& y) const {
  for (double v : y)
    if (!std::isfinite(v)) throw InputError("observation contains non-finite value");
}

AwgnChannel::AwgnChannel(double noise_var) : noise_var_(noise_var) {
  if (!std::isfinite(noise_var) || noise_var <= 0.0)
    throw ContractError("AwgnChannel: noise variance must be positive");
}

GaussianBelief AwgnChannel::posterior_moments(const Vec& y, const GaussianBelief& prior) const {
  if (y.size() != prior.size()) throw ContractError("posterior_moments: length mismatch");
  validate_observation(y);
  const std::size_t n = y.size();
  Vec m(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pv = prior.var[i];
    const double post = pv * noise_var_ / (pv + noise_var_);
    v[i] = post;
    m[i] = post * (prior.mean[i] / pv + y[i] / noise_var_);
  }
  return GaussianBelief(std::move(m), std::move(v));
}

GaussianBelief AwgnChannel::pseudo_data(const Vec& y, const GaussianBelief& prior) const {
  if (y.size() != prior.size()) throw ContractError("pseudo_data: length mismatch");
  validate_observation(y);
  return GaussianBelief(y, Vec(y.size(), noise_var_));
}

ProbitChannel::ProbitChannel(double noise_std)
    : noise_std_(noise_std < kNoiseStdFloor ? kNoiseStdFloor : noise_std) {
  if (!std::isfinite(noise_std) || noise_std < 0.0)
    throw ContractError("ProbitChannel: noise std must be non-negative and finite");
}

void ProbitChannel::validate_observation(const Vec& y) const {
  for (double v : y)
    if (v != 1.0 && v != -1.0)
      throw InputError("probit observation must be exactly +1 or -1");
}

void ProbitChannel::moments_one(double y, double prior_mean, double prior_var, double noise_std,
                                double& post_mean, double& post_var) {
  const double v = prior_var;
  const double t = v + noise_std * noise_std;
  const double rt = std::sqrt(t);
  const double u = y * prior_mean / rt;
  const double hr = hazard_ratio(u);
  post_mean = prior_mean + y * v * hr / rt;
  post_var = v - v * v * hr * (u + hr) / t;
}

GaussianBelief ProbitChannel::posterior_moments(const Vec& y,
                                                const GaussianBelief& prior) const {
  if (y.size() != prior.size()) throw ContractError("posterior_moments: length mismatch");
  validate_observation(y);
  const std::size_t n = y.size();
  Vec m(n), v(n);
  for (std::size_t i = 0; i < n; ++i)
    moments_one(y[i], prior.mean[i], prior.var[i], noise_std_, m[i], v[i]);
  return GaussianBelief(std::move(m), std::move(v));
}

}  // namespace glmt
