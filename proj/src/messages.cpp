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
#include "messages.hpp"

#include <cmath>

#include "errors.hpp"

namespace glmt {

GaussianBelief::GaussianBelief(Vec mean_in, Vec var_in)
    : mean(std::move(mean_in)), var(std::move(var_in)) {
  if (mean.size() != var.size())
    throw ContractError("GaussianBelief: mean/variance length mismatch");
  for (std::size_t i = 0; i < mean.size(); ++i) {
    if (!std::isfinite(mean[i]) || std::isnan(var[i]))
      throw ContractError("GaussianBelief: non-finite component");
    var[i] = clamp_var(var[i]);
  }
}

GaussianBelief GaussianBelief::constant(std::size_t n, double mean_value, double var_value) {
  return GaussianBelief(Vec(n, mean_value), Vec(n, var_value));
}

GaussianBelief extrinsic(const GaussianBelief& posterior, const GaussianBelief& prior) {
  if (posterior.size() != prior.size())
    throw ContractError("extrinsic: belief length mismatch");
  const std::size_t n = posterior.size();
  Vec m(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prec = 1.0 / posterior.var[i] - 1.0 / prior.var[i];
    if (prec <= 0.0) {
      v[i] = GaussianBelief::kVarMax;
      m[i] = posterior.mean[i];
      continue;
    }
    const double vi = clamp_var(1.0 / prec);
    v[i] = vi;
    m[i] = vi * (posterior.mean[i] / posterior.var[i] - prior.mean[i] / prior.var[i]);
  }
  return GaussianBelief(std::move(m), std::move(v));
}

GaussianBelief combine(const GaussianBelief& a, const GaussianBelief& b) {
  if (a.size() != b.size()) throw ContractError("combine: belief length mismatch");
  const std::size_t n = a.size();
  Vec m(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = clamp_var(1.0 / (1.0 / a.var[i] + 1.0 / b.var[i]));
    v[i] = vi;
    m[i] = vi * (a.mean[i] / a.var[i] + b.mean[i] / b.var[i]);
  }
  return GaussianBelief(std::move(m), std::move(v));
}

}  // namespace glmt
