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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "sbl.hpp"
#include "synth.hpp"

using namespace glmt;

namespace {

double rel_linf(const Vec& a, const Vec& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace

TEST_CASE("LMMSE scalar example") {
  const std::size_t n = 5;
  Rng rng(6001);
  Vec y(n);
  for (auto& v : y) v = rng.normal();
  const SblLmmseResult out = sbl_lmmse(Vec(n, 1.0), Matrix::identity(n), y, Vec(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(out.c2(i, i) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(out.x_hat2[i] == doctest::Approx(y[i] / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("huge precision prunes the component") {
  const std::size_t n = 4;
  Vec alpha(n, 1.0);
  alpha[2] = kAlphaMax;
  Rng rng(6002);
  Vec y(n);
  for (auto& v : y) v = rng.normal();
  const SblLmmseResult out = sbl_lmmse(alpha, Matrix::identity(n), y, Vec(n, 1.0));
  CHECK(std::abs(out.x_hat2[2]) <= 1e-8);
  CHECK(out.c2(2, 2) <= 2e-11);
}

TEST_CASE("LMMSE matches the dense-solve oracle") {
  Rng rng(6003);
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 16, m = 32;
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal() / std::sqrt(double(m));
    Vec y(m), s2(m), alpha(n);
    for (auto& v : y) v = rng.normal();
    for (auto& v : s2) v = 0.1 + rng.uniform01();
    for (auto& v : alpha) v = 0.2 + rng.uniform01();
    const SblLmmseResult out = sbl_lmmse(alpha, a, y, s2);
    Vec w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = 1.0 / s2[i];
    Matrix s = weighted_gram(a, w);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += alpha[i];
    CHECK(rel_linf(out.x_hat2, oracle::dense_solve(s, weighted_tmatvec(a, w, y))) <= 1e-10);
  }
}

TEST_CASE("EM update plug-in values") {
  Matrix c2(2, 2);
  c2(0, 0) = 1.0;
  c2(1, 1) = 0.0;
  Vec x2{1.0, 0.0};  // x^2 + C_ii = 2 and 0
  const Vec alpha = sbl_em_update(x2, c2, 0.0, 0.0);
  CHECK(alpha[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(alpha[1] == kAlphaMax);  // pruned component clamps

  const Vec alpha2 = sbl_em_update({2.0}, Matrix::identity(1), 1e-10, 1e-10);
  CHECK(alpha2[0] == doctest::Approx(1.0 / 5.0).epsilon(1e-8));  // ~ 1/(x^2 + C_ii)
}

TEST_CASE("z posterior mirrors the LMMSE-family extraction") {
  Rng rng(6004);
  const std::size_t n = 8, m = 20;
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal() / 3.0;
  Matrix s = gram(a);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 1.0;
  const Matrix c2 = spd_inverse(s);
  Vec x2(n);
  for (auto& v : x2) v = rng.normal();

  const ZPosterior zp = sbl_z_posterior(x2, c2, a);
  const Vec diag = sbl_z_posterior_diag(x2, c2, a);
  // Per-component entries are the exact diagonal of A C2 A^T.
  for (std::size_t r = 0; r < m; ++r) {
    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ref += a(r, i) * c2(i, j) * a(r, j);
    CHECK(diag[r] == doctest::Approx(ref).epsilon(1e-12));
  }
  double mean_diag = std::accumulate(diag.begin(), diag.end(), 0.0) / double(m);
  CHECK(zp.var == doctest::Approx(mean_diag).epsilon(1e-12));
}

TEST_CASE("averaged and per-component modes agree for a constant diagonal") {
  const std::size_t n = 6;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 2.0;  // orthogonal rows, equal norms
  Matrix c2(n, n);
  for (std::size_t i = 0; i < n; ++i) c2(i, i) = 0.3;  // C2 proportional to I
  const Vec x2(n, 1.0);
  const ZPosterior zp = sbl_z_posterior(x2, c2, a);
  const Vec diag = sbl_z_posterior_diag(x2, c2, a);
  for (double d : diag) CHECK(d == doctest::Approx(zp.var).epsilon(1e-13));
}

TEST_CASE("alpha stays in range and estimates stay finite over 200 iterations") {
  Rng rng(6005);
  const std::size_t n = 24, m = 48;
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal() / std::sqrt(double(m));
  const Vec x = sample_signal({n, 0.2, 0.0, 6006});
  Vec y = matvec(a, x);
  for (auto& v : y) v += 0.05 * rng.normal();
  const Vec s2(m, 0.0025);
  SblState st = sbl_init(n);
  for (int t = 0; t < 200; ++t) {
    const SblLmmseResult out = sbl_lmmse(st.alpha, a, y, s2);
    st.alpha = sbl_em_update(out.x_hat2, out.c2, st.hyper_a, st.hyper_b);
    REQUIRE(all_finite(out.x_hat2));
    for (double al : st.alpha) {
      REQUIRE(al >= kAlphaMin);
      REQUIRE(al <= kAlphaMax);
    }
  }
}

TEST_CASE("support recovery on near-noiseless exactly-sparse problems") {
  const std::size_t n = 64, k = 8, m = 40;  // m >= 4k
  int hits = 0;
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(7000 + seed);
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal() / std::sqrt(double(m));
    // Exactly k-sparse signal with unit-magnitude nonzeros at random support.
    Vec x(n, 0.0);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
      std::swap(idx[i], idx[i + rng.next_u64() % (n - i)]);
    for (std::size_t i = 0; i < k; ++i) x[idx[i]] = (rng.uniform01() < 0.5 ? -1.0 : 1.0);
    const Vec y = matvec(a, x);
    const Vec s2(m, 1e-8);
    SblState st = sbl_init(n);
    for (int t = 0; t < 100; ++t) {
      const SblLmmseResult out = sbl_lmmse(st.alpha, a, y, s2);
      st.alpha = sbl_em_update(out.x_hat2, out.c2, st.hyper_a, st.hyper_b);
    }
    const SblLmmseResult fin = sbl_lmmse(st.alpha, a, y, s2);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return std::abs(fin.x_hat2[i]) > std::abs(fin.x_hat2[j]);
    });
    std::vector<std::size_t> top(order.begin(), order.begin() + k);
    std::vector<std::size_t> truth(idx.begin(), idx.begin() + k);
    std::sort(top.begin(), top.end());
    std::sort(truth.begin(), truth.end());
    if (top == truth) ++hits;
  }
  CHECK(hits >= 9);
}

TEST_CASE("contracts") {
  CHECK_THROWS_AS(sbl_init(4, -1.0, 0.0), ContractError);
  CHECK_THROWS_AS(sbl_lmmse({0.0, 1.0}, Matrix::identity(2), {0.0, 0.0}, {1.0, 1.0}),
                  ContractError);
}
