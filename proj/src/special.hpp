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

namespace glmt {

/// Standard normal density phi(x).
double normal_pdf(double x);

/// Standard normal CDF Phi(x), accurate in both tails (erfc-based).
double normal_cdf(double x);

/// Scaled complementary error function exp(x^2) erfc(x). Finite for all
/// x >= -26.6; overflows to +inf below that, which callers must not reach.
double erfcx(double x);

/// Gaussian hazard ratio phi(u) / Phi(u). The naive quotient underflows to
/// 0/0 near u = -37; this evaluation stays accurate for arbitrarily negative
/// u via erfcx, where the ratio grows like -u + 1/(-u).
double hazard_ratio(double u);

}  // namespace glmt
