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

#include <memory>

#include "messages.hpp"

namespace glmt {

/// Output channel abstraction: component-wise MMSE posterior moments of
/// z_a under the likelihood p(y_a | z_a) and a Gaussian prior on z_a.
/// New channels plug in by implementing posterior_moments only; the turbo
/// loop never looks inside.
class Channel {
 public:
  virtual ~Channel() = default;

  /// Posterior mean/variance of z per component, prior N(prior.mean, prior.var).
  virtual GaussianBelief posterior_moments(const Vec& y, const GaussianBelief& prior) const = 0;

  /// Pseudo observation (y~, sigma~^2): the extrinsic message obtained by
  /// dividing the channel posterior by the incoming prior. Together with the
  /// mixing matrix it defines an equivalent additive-Gaussian linear problem
  /// with per-component noise. Default composes posterior_moments with the
  /// message division; channels with a closed form may override.
  virtual GaussianBelief pseudo_data(const Vec& y, const GaussianBelief& prior) const;

  /// Throws InputError if y is not a legal observation for this channel.
  virtual void validate_observation(const Vec& y) const;

  virtual std::unique_ptr<Channel> clone() const = 0;
};

/// Additive Gaussian channel y = z + w, w ~ N(0, noise_var). For this channel
/// the extrinsic division collapses: the pseudo observation is exactly
/// (y, noise_var), so the overridden pseudo_data returns it verbatim and the
/// outer loop degenerates to the plain linear problem.
class AwgnChannel final : public Channel {
 public:
  explicit AwgnChannel(double noise_var);

  GaussianBelief posterior_moments(const Vec& y, const GaussianBelief& prior) const override;
  GaussianBelief pseudo_data(const Vec& y, const GaussianBelief& prior) const override;
  std::unique_ptr<Channel> clone() const override { return std::make_unique<AwgnChannel>(*this); }

  double noise_var() const { return noise_var_; }

 private:
  double noise_var_;
};

/// One-bit channel y = sign(z + w), w ~ N(0, noise_std^2), y in {-1, +1}.
/// Likelihood p(y | z) = Phi(y z / noise_std). Posterior moments are closed
/// form in the Gaussian hazard ratio; evaluation stays stable deep in the
/// tails where the naive pdf/cdf quotient underflows.
class ProbitChannel final : public Channel {
 public:
  static constexpr double kNoiseStdFloor = 1e-10;  // makes noiseless 1-bit expressible

  explicit ProbitChannel(double noise_std);

  GaussianBelief posterior_moments(const Vec& y, const GaussianBelief& prior) const override;
  void validate_observation(const Vec& y) const override;
  std::unique_ptr<Channel> clone() const override {
    return std::make_unique<ProbitChannel>(*this);
  }

  double noise_std() const { return noise_std_; }

  /// Scalar moment update, exposed for direct testing against quadrature.
  static void moments_one(double y, double prior_mean, double prior_var, double noise_std,
                          double& post_mean, double& post_var);

 private:
  double noise_std_;
};

}  // namespace glmt
