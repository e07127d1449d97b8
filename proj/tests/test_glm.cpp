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

#include "errors.hpp"
#include "glm.hpp"
#include "rng.hpp"
#include "sbl.hpp"
#include "synth.hpp"
#include "vamp.hpp"

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

double linf(const Vec& a, const Vec& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num = std::max(num, std::abs(a[i] - b[i]));
  return num;
}

GlmProblem awgn_problem(std::size_t n, std::size_t m, double noise_var, std::uint64_t seed,
                        Vec* x_out) {
  Matrix a = conditioned_matrix({m, n, 1.0, seed});
  Vec x = sample_signal({n, 0.2, 0.0, seed + 1});
  Rng rng(seed + 2);
  Vec y = matvec(a, x);
  for (auto& v : y) v += std::sqrt(noise_var) * rng.normal();
  if (x_out) *x_out = x;
  return GlmProblem(std::move(a), std::move(y), std::make_unique<AwgnChannel>(noise_var),
                    std::make_unique<BernoulliGaussianPrior>(0.2));
}

}  // namespace

TEST_CASE("solver names parse in all the obvious spellings") {
  CHECK(parse_solver("Gr-AMP") == Solver::GrAmp);
  CHECK(parse_solver("grvamp") == Solver::GrVamp);
  CHECK(parse_solver("GR_SBL") == Solver::GrSbl);
  CHECK(parse_solver("gamp") == Solver::Gamp);
  CHECK_THROWS_AS(parse_solver("oamp"), ParseError);
}

TEST_CASE("on a Gaussian channel the loop reduces to the bare inner solver") {
  const std::size_t n = 32, m = 64;
  const double noise_var = 0.01;
  Vec x;
  const GlmProblem problem = awgn_problem(n, m, noise_var, 8001, &x);
  const int t_max = 15;

  GlmLoopConfig cfg;
  cfg.t_max = t_max;
  cfg.iter_slm = 1;

  SUBCASE("Gr-VAMP equals bare VAMP") {
    cfg.solver = Solver::GrVamp;
    const GlmTrace trace = run(problem, cfg, &x);
    VampState vs = vamp_init(*problem.prior, n);
    const Vec s2(m, noise_var);
    for (int t = 0; t < t_max; ++t) {
      const VampDenoiseResult den = vamp_denoise_half(vs.r1, vs.gamma1, *problem.prior);
      const VampLmmseResult lin = vamp_lmmse_half(den.r2, den.gamma2, problem.a, problem.y, s2);
      vs.r1 = lin.r1_next;
      vs.gamma1 = lin.gamma1_next;
      CHECK(linf(trace.iterates[t].x_hat, den.x_hat1) <= 1e-10);
    }
  }

  SUBCASE("Gr-SBL equals bare SBL") {
    cfg.solver = Solver::GrSbl;
    const GlmTrace trace = run(problem, cfg, &x);
    SblState st = sbl_init(n, cfg.sbl_hyper_a, cfg.sbl_hyper_b);
    const Vec s2(m, noise_var);
    for (int t = 0; t < t_max; ++t) {
      const SblLmmseResult lin = sbl_lmmse(st.alpha, problem.a, problem.y, s2);
      st.alpha = sbl_em_update(lin.x_hat2, lin.c2, st.hyper_a, st.hyper_b);
      CHECK(linf(trace.iterates[t].x_hat, lin.x_hat2) <= 1e-10);
    }
  }

  SUBCASE("Gr-AMP equals bare AMP seeded with the loop's output message") {
    cfg.solver = Solver::GrAmp;
    const GlmTrace trace = run(problem, cfg, &x);
    const Matrix a_sq = squared_entries(problem.a);
    AmpState s = amp_init_with_output(*problem.prior, n, m, cfg.init_z_ext_mean,
                                      cfg.init_z_ext_var);
    const Vec s2(m, noise_var);
    for (int t = 0; t < t_max; ++t) {
      amp_step(s, problem.a, a_sq, problem.y, s2, *problem.prior);
      CHECK(linf(trace.iterates[t].x_hat, s.x_hat) <= 1e-10);
    }
  }
}

TEST_CASE("Gr-AMP with one inner iteration matches the direct generalized stepper") {
  for (int inst = 0; inst < 3; ++inst) {
    const OneBitProblem p = make_onebit_problem({128, 32, 1.0, 8100u + (unsigned)inst},
                                                {32, 0.25, 0.0, 8200u + (unsigned)inst}, 30.0);
    GlmLoopConfig cfg;
    cfg.t_max = 20;
    cfg.iter_slm = 1;
    cfg.solver = Solver::GrAmp;
    const GlmTrace a = run(p.problem, cfg, &p.x_true);
    cfg.solver = Solver::Gamp;
    const GlmTrace b = run(p.problem, cfg, &p.x_true);
    REQUIRE(a.iterates.size() == b.iterates.size());
    for (std::size_t t = 0; t < a.iterates.size(); ++t)
      CHECK(rel_linf(a.iterates[t].x_hat, b.iterates[t].x_hat) <= 1e-8);
  }
}

TEST_CASE("t_max = 1 runs exactly one outer iteration") {
  Vec x;
  const GlmProblem problem = awgn_problem(16, 32, 0.01, 8002, &x);
  GlmLoopConfig cfg;
  cfg.t_max = 1;
  cfg.solver = Solver::GrVamp;
  const GlmTrace trace = run(problem, cfg, &x);
  CHECK(trace.iterates.size() == 1);
  CHECK(!trace.diverged);
}

TEST_CASE("same configuration gives bit-identical traces") {
  const OneBitProblem p = make_onebit_problem({64, 16, 1.0, 8003}, {16, 0.25, 0.0, 8004}, 40.0);
  for (Solver s : {Solver::GrAmp, Solver::GrVamp, Solver::GrSbl, Solver::Gamp}) {
    GlmLoopConfig cfg;
    cfg.t_max = 10;
    cfg.solver = s;
    const GlmTrace t1 = run(p.problem, cfg, &p.x_true);
    const GlmTrace t2 = run(p.problem, cfg, &p.x_true);
    REQUIRE(t1.iterates.size() == t2.iterates.size());
    for (std::size_t t = 0; t < t1.iterates.size(); ++t)
      for (std::size_t i = 0; i < 16; ++i)
        CHECK(t1.iterates[t].x_hat[i] == t2.iterates[t].x_hat[i]);
  }
}

TEST_CASE("AMP on an ill-conditioned instance is flagged divergent, loop survives") {
  const OneBitProblem p =
      make_onebit_problem({128, 32, 100.0, 8005}, {32, 0.1, 0.0, 8006}, 50.0);
  GlmLoopConfig cfg;
  cfg.t_max = 50;
  cfg.solver = Solver::GrAmp;
  const GlmTrace trace = run(p.problem, cfg, &p.x_true);
  CHECK(trace.diverged);
  CHECK(trace.diverged_at >= 1);
  CHECK(trace.iterates.size() == static_cast<std::size_t>(trace.diverged_at));
  CHECK(trace.iterates.size() <= 50);
}

TEST_CASE("debiased NMSE") {
  Rng rng(8007);
  Vec x(32);
  for (auto& v : x) v = rng.normal();

  SUBCASE("perfect recovery floors at -320 dB") {
    CHECK(dnmse_db(x, x) == -320.0);
    Vec x2 = x;
    for (auto& v : x2) v *= 2.0;
    CHECK(dnmse_db(x2, x) == -320.0);  // debiasing absorbs the scale exactly
  }

  SUBCASE("zero estimate gives 0 dB by the c = 0 convention") {
    CHECK(dnmse_db(Vec(32, 0.0), x) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("orthogonal estimate gives 0 dB, and c = 0 is the 1-D minimizer") {
    Vec perp(32, 0.0);
    perp[0] = x[1];
    perp[1] = -x[0];
    const double at_min = dnmse_db(perp, x);
    CHECK(at_min == doctest::Approx(0.0).epsilon(1e-12));
    // Independent scan over the debiasing coefficient.
    const double nt = norm_sq(x);
    double best = 1e300;
    for (double c = -3.0; c <= 3.0; c += 0.001) {
      double resid = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = c * perp[i] - x[i];
        resid += d * d;
      }
      best = std::min(best, 10.0 * std::log10(resid / nt));
    }
    CHECK(at_min <= best + 1e-9);
  }

  SUBCASE("scale invariance is exact for power-of-two scalings") {
    Vec e(32);
    for (std::size_t i = 0; i < 32; ++i) e[i] = x[i] + 0.1 * rng.normal();
    const double base = dnmse_db(e, x);
    for (double c : {2.0, 0.5, 1024.0, 0x1p-20}) {
      Vec scaled = e;
      for (auto& v : scaled) v *= c;
      CHECK(dnmse_db(scaled, x) == base);
    }
    Vec scaled = e;
    for (auto& v : scaled) v *= 3.7;
    CHECK(dnmse_db(scaled, x) == doctest::Approx(base).epsilon(1e-12));
  }

  SUBCASE("zero truth is an input error") {
    CHECK_THROWS_AS(dnmse_db(x, Vec(32, 0.0)), InputError);
  }
}

TEST_CASE("config validation") {
  GlmLoopConfig cfg;
  cfg.t_max = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.t_max = 10;
  cfg.iter_slm = 0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.iter_slm = 1;
  cfg.damping = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ContractError);
  cfg.damping = 1.0;
  CHECK_NOTHROW(cfg.validate());
}
