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
#include "rng.hpp"

#include <cmath>

namespace glmt {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ mix64(a ^ 0xA0761D8437FB8E3FULL));
  h = mix64(h ^ mix64(b ^ 0xC6A4A7935BD1E995ULL));
  h = mix64(h ^ mix64(c ^ 0x8CB92BA72F3D8DD7ULL));
  return h;
}

}  // namespace glmt
