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
#include "special.hpp"

#include <cmath>

namespace glmt {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
constexpr double kSqrt2OverPi = 0.79788456080286535587989211986876;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double erfcx(double x) {
  if (x < 0.0) {
    // erfcx(x) = 2 exp(x^2) - erfcx(-x); exp overflows for x < -26.6.
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x <= 25.0) {
    // erfc(25) ~ 8e-274 and exp(625) ~ 3e271: both representable, and the
    // library erfc keeps relative accuracy through the tail.
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series erfcx(x) ~ (x sqrt(pi))^-1 sum (-1)^k (2k-1)!! (2x^2)^-k;
  // truncation error < 1e-22 for x > 25.
  const double q = 1.0 / (2.0 * x * x);
  double s = 1.0 -
             q * (1.0 -
                  3.0 * q *
                      (1.0 -
                       5.0 * q *
                           (1.0 -
                            7.0 * q *
                                (1.0 -
                                 9.0 * q *
                                     (1.0 -
                                      11.0 * q *
                                          (1.0 -
                                           13.0 * q *
                                               (1.0 -
                                                15.0 * q *
                                                    (1.0 - 17.0 * q * (1.0 - 19.0 * q)))))))));
  return s / (x * kSqrtPi);
}

double hazard_ratio(double u) {
  if (u >= 0.0) return normal_pdf(u) / normal_cdf(u);
  return kSqrt2OverPi / erfcx(-u / kSqrt2);
}

}  // namespace glmt
