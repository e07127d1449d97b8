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

#include "linalg.hpp"

namespace glmt {

/// Component-wise signal denoiser: posterior moments of x under the signal
/// prior p0 and a Gaussian pseudo-observation N(x; r, sigma2).
class Prior {
 public:
  virtual ~Prior() = default;

  /// Fills x_hat = E(x | r, sigma2) and tau = Var(x | r, sigma2) per
  /// component, where the posterior is proportional to p0(x) N(x; r, sigma2).
  virtual void denoise(const Vec& r, const Vec& sigma2, Vec& x_hat, Vec& tau) const = 0;

  /// d x_hat / d r per component. For these priors it equals tau / sigma2
  /// (Gaussian pseudo-likelihood identity), which the default provides.
  virtual Vec divergence(const Vec& r, const Vec& sigma2) const;

  virtual double prior_mean() const = 0;
  virtual double prior_variance() const = 0;
  virtual std::unique_ptr<Prior> clone() const = 0;

 protected:
  static void check_inputs(const Vec& r, const Vec& sigma2);
};

/// Spike-and-slab prior: weight 1-rho at zero, weight rho on N(0, slab_var).
/// The slab variance defaults to 1/rho so E||x||^2 = N.
class BernoulliGaussianPrior final : public Prior {
 public:
  explicit BernoulliGaussianPrior(double rho, double slab_var = 0.0);

  void denoise(const Vec& r, const Vec& sigma2, Vec& x_hat, Vec& tau) const override;
  double prior_mean() const override { return 0.0; }
  double prior_variance() const override { return rho_ * slab_var_; }
  std::unique_ptr<Prior> clone() const override {
    return std::make_unique<BernoulliGaussianPrior>(*this);
  }

  double rho() const { return rho_; }
  double slab_var() const { return slab_var_; }

  /// Scalar denoiser used component-wise; exposed for direct testing.
  void denoise_one(double r, double s2, double& x_hat, double& tau) const;

 private:
  double rho_;
  double slab_var_;
};

/// Plain Gaussian prior N(mean, var); the denoiser is linear.
class GaussianPrior final : public Prior {
 public:
  GaussianPrior(double mean, double var);

  void denoise(const Vec& r, const Vec& sigma2, Vec& x_hat, Vec& tau) const override;
  double prior_mean() const override { return mean_; }
  double prior_variance() const override { return var_; }
  std::unique_ptr<Prior> clone() const override { return std::make_unique<GaussianPrior>(*this); }

 private:
  double mean_;
  double var_;
};

}  // namespace glmt
