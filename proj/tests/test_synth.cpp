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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rng.hpp"
#include "synth.hpp"

using namespace glmt;

namespace {

double ortho_error(const Matrix& q) {
  const Matrix g = gram(q);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST_CASE("orthogonal factors are orthogonal to 1e-12") {
  for (std::size_t n : {2u, 16u, 64u, 512u})
    CHECK(ortho_error(haar_orthogonal(n, 9000 + n)) <= 1e-12);
}

TEST_CASE("n = 1 gives a sign") {
  int plus = 0, minus = 0;
  for (int s = 0; s < 32; ++s) {
    const Matrix q = haar_orthogonal(1, 9100 + s);
    CHECK(std::abs(q(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    (q(0, 0) > 0 ? plus : minus)++;
  }
  CHECK(plus > 0);
  CHECK(minus > 0);  // without the sign fix this would be one-sided
}

TEST_CASE("first-column entries carry Haar mass: E<q,e1>^2 = 1/n") {
  const std::size_t n = 8;
  double acc = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    const Matrix q = haar_orthogonal(n, 9200 + s);
    acc += q(0, 0) * q(0, 0);
  }
  acc /= draws;
  CHECK(acc == doctest::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("conditioned matrix hits the target condition number") {
  for (double kappa : {1.0, 100.0}) {
    const Matrix a = conditioned_matrix({64, 16, kappa, 9300});
    const std::vector<double> sv = singular_values(a);
    CHECK(sv.front() / sv.back() == doctest::Approx(kappa).epsilon(1e-10));
  }
}

TEST_CASE("squared Frobenius norm equals the column count") {
  for (double kappa : {1.0, 1e4}) {
    const Matrix a = conditioned_matrix({48, 24, kappa, 9301});
    double fro = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) fro += a(i, j) * a(i, j);
    CHECK(fro == doctest::Approx(24.0).epsilon(1e-12));
  }
}

TEST_CASE("kappa = 1 means equal singular values") {
  const Matrix a = conditioned_matrix({32, 8, 1.0, 9302});
  const std::vector<double> sv = singular_values(a);
  for (double s : sv) CHECK(s == doctest::Approx(sv.front()).epsilon(1e-12));
}

TEST_CASE("dense Gaussian signal at rho = 1 has the slab variance") {
  const Vec x = sample_signal({512, 1.0, 2.0, 9303});
  double var = norm_sq(x) / 512.0;
  CHECK(var == doctest::Approx(2.0).epsilon(0.10));
  for (double v : x) CHECK(v != 0.0);
}

TEST_CASE("sparsity level is binomial: total nonzeros over 100 seeds in the 99% band") {
  int nonzeros = 0;
  for (int s = 0; s < 100; ++s) {
    const Vec x = sample_signal({512, 0.1, 0.0, 9400u + (unsigned)s});
    for (double v : x)
      if (v != 0.0) ++nonzeros;
  }
  // Binomial(51200, 0.1): mean 5120, sd 67.9; 99% band is +/- 2.58 sd.
  CHECK(nonzeros >= 5120 - 176);
  CHECK(nonzeros <= 5120 + 176);
}

TEST_CASE("signal draws are deterministic per seed") {
  const Vec a = sample_signal({64, 0.3, 0.0, 9500});
  const Vec b = sample_signal({64, 0.3, 0.0, 9500});
  for (std::size_t i = 0; i < 64; ++i) CHECK(a[i] == b[i]);
  const Vec c = sample_signal({64, 0.3, 0.0, 9501});
  bool differ = false;
  for (std::size_t i = 0; i < 64; ++i) differ = differ || a[i] != c[i];
  CHECK(differ);
}

TEST_CASE("one-bit problem: SNR calibration is exact per realization") {
  const OneBitProblem p = make_onebit_problem({64, 16, 1.0, 9600}, {16, 0.25, 0.0, 9601}, 50.0);
  const Vec z = matvec(p.problem.a, p.x_true);
  const double realized = norm_sq(z) / (64.0 * p.sigma * p.sigma);
  CHECK(realized == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(dynamic_cast<ProbitChannel*>(p.problem.channel.get()) != nullptr);
}

TEST_CASE("extreme SNR gives the noiseless sign measurement") {
  const OneBitProblem p = make_onebit_problem({48, 12, 1.0, 9602}, {12, 0.5, 0.0, 9603}, 500.0);
  const Vec z = matvec(p.problem.a, p.x_true);
  for (std::size_t i = 0; i < z.size(); ++i)
    CHECK(p.problem.y[i] == (z[i] >= 0.0 ? 1.0 : -1.0));
}

TEST_CASE("flipping the signal flips the noiseless measurements") {
  const Matrix a = conditioned_matrix({32, 8, 1.0, 9604});
  const Vec x = sample_signal({8, 0.5, 0.0, 9605});
  Vec neg = x;
  for (auto& v : neg) v = -v;
  const OneBitProblem p1 = make_onebit_problem_from(a, x, 0.5, 0.0, 400.0, 9606);
  const OneBitProblem p2 = make_onebit_problem_from(a, neg, 0.5, 0.0, 400.0, 9606);
  CHECK(p1.sigma == p2.sigma);  // identical calibration by symmetry
  for (std::size_t i = 0; i < 32; ++i) CHECK(p1.problem.y[i] == -p2.problem.y[i]);
}

TEST_CASE("per-trial seeds differ across counters") {
  CHECK(split_seed(1, 2, 3, 4) != split_seed(1, 2, 3, 5));
  CHECK(split_seed(1, 2, 3, 4) != split_seed(1, 2, 4, 4));
  CHECK(split_seed(1, 2, 3, 4) != split_seed(2, 2, 3, 4));
}
