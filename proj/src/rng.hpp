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

#include <cstdint>
#include <random>

namespace glmt {

/// Deterministic random stream. std::mt19937_64 is fully specified by the
/// standard; the distributions are not, so uniform and normal variates are
/// generated here explicitly (53-bit uniforms, Box-Muller normals) to keep
/// every artifact reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in (0, 1]; never returns 0 so log() is always safe.
  double uniform01() {
    const std::uint64_t bits = eng_() >> 11;  // 53 random bits
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer; good avalanche, standard constants.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and up to three
/// counters. Used so every trial artifact is reproducible from
/// (master seed, counters) regardless of evaluation order or thread count.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0);

}  // namespace glmt
