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

#include "linalg.hpp"

namespace glmt {

/// Per-component Gaussian message: the currency exchanged between the linear
/// inference stage and the output-channel stage of the turbo loop.
///
/// Variances are clamped into [kVarMin, kVarMax] on construction, so a valid
/// belief always has strictly positive, finite variances. Means must be
/// finite; non-finite input is a contract violation.
struct GaussianBelief {
  static constexpr double kVarMin = 1e-11;
  static constexpr double kVarMax = 1e11;

  Vec mean;
  Vec var;

  GaussianBelief() = default;
  GaussianBelief(Vec mean_in, Vec var_in);

  std::size_t size() const { return mean.size(); }

  /// Uniform belief, e.g. (0, 1e8) as a flat starting message.
  static GaussianBelief constant(std::size_t n, double mean_value, double var_value);
};

inline double clamp_var(double v) {
  if (v < GaussianBelief::kVarMin) return GaussianBelief::kVarMin;
  if (v > GaussianBelief::kVarMax) return GaussianBelief::kVarMax;
  return v;
}

/// Gaussian division: removes the prior's contribution from a posterior by
/// precision subtraction,
///   v = (1/v_post - 1/v_prior)^-1,  m = v (m_post/v_post - m_prior/v_prior).
/// When the precision difference is non-positive (posterior no sharper than
/// prior, possible after clamping), falls back to v = kVarMax, m = m_post so
/// the loop stays alive instead of producing a negative variance.
GaussianBelief extrinsic(const GaussianBelief& posterior, const GaussianBelief& prior);

/// Gaussian product rule: precision-weighted combination of two beliefs.
GaussianBelief combine(const GaussianBelief& a, const GaussianBelief& b);

}  // namespace glmt
