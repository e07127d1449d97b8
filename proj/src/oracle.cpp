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
#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "channels.hpp"
#include "errors.hpp"
#include "glm.hpp"
#include "rng.hpp"
#include "sbl.hpp"
#include "special.hpp"
#include "synth.hpp"
#include "vamp.hpp"

namespace glmt::oracle {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                 int max_depth) {
  if (!(hi > lo)) return 0.0;
  // Composite start: 16 uniform panels, each refined adaptively. A single
  // top-level Simpson cell can sample past a localized integrand (or hit a
  // zero of an odd-weighted one) and terminate on a spurious zero estimate.
  const int panels = 16;
  const double h = (hi - lo) / panels;
  const double panel_tol = abs_tol / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double b = (p == panels - 1) ? hi : a + h;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    acc += simpson_rec(f, a, b, fa, fm, fb, whole, panel_tol, max_depth);
  }
  return acc;
}

namespace {

// Coarse fixed-grid Simpson estimate used to set a scale-aware tolerance for
// the adaptive pass; integrals of nearly-impossible observations are tiny and
// a fixed absolute tolerance would swamp them.
double coarse_scale(const std::function<double(double)>& f, double lo, double hi) {
  const int n = 512;  // even
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * ((i % 2) ? 4.0 : 2.0);
  s *= h / 3.0;
  return std::max(std::abs(s), 1e-280);
}

}  // namespace

Moments probit_moments(double y, double m, double v, double sigma) {
  const double sd = std::sqrt(v);
  auto weight = [&](double zeta) {
    return normal_cdf(y * (m + sd * zeta) / sigma) * normal_pdf(zeta);
  };
  // The likelihood transitions around z = 0 (zeta0 = -m/sd) over a layer of
  // width ~sigma/sd, which is a near-step once sigma << sd. Segment the range
  // so the layer gets its own narrow interval: outside it the integrand is a
  // saturated, smooth Gaussian slice and the sampler converges immediately.
  const double zeta0 = -m / sd;
  const double layer = 40.0 * sigma / sd;
  std::vector<double> cuts{-12.0, 12.0};
  for (double c : {zeta0 - layer, zeta0, zeta0 + layer})
    if (c > -12.0 && c < 12.0) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());

  auto piecewise = [&](const std::function<double(double)>& f, double tol) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      acc += integrate(f, cuts[k], cuts[k + 1], tol);
    return acc;
  };
  double scale = 1e-280;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    scale = std::max(scale, coarse_scale(weight, cuts[k], cuts[k + 1]));
  const double tol = 1e-12 * scale;
  const double i0 = piecewise(weight, tol);
  // Two passes: first locate the posterior mean, then accumulate moments
  // about it so the variance is cancellation-free.
  const double c = piecewise([&](double zeta) { return weight(zeta) * zeta; }, tol) / i0;
  const double j1 = piecewise([&](double zeta) { return weight(zeta) * (zeta - c); }, tol);
  const double j2 =
      piecewise([&](double zeta) { return weight(zeta) * (zeta - c) * (zeta - c); }, tol);
  Moments out;
  const double r1 = j1 / i0;
  out.mean = m + sd * (c + r1);
  out.var = v * (j2 / i0 - r1 * r1);
  return out;
}

Moments bernoulli_gauss_moments(double rho, double slab_var, double r, double s2) {
  const double spike =
      (1.0 - rho) * normal_pdf(r / std::sqrt(s2)) / std::sqrt(s2);  // N(0; r, s2)
  const double sv = std::sqrt(slab_var);
  const double ss = std::sqrt(s2);
  // The slab integrand is the product of two Gaussians; restrict the range to
  // the intersection of their 14-sigma supports so a narrow likelihood cannot
  // slip between quadrature samples of a wide interval.
  double lo = std::max(-14.0 * sv, r - 14.0 * ss);
  double hi = std::min(14.0 * sv, r + 14.0 * ss);
  if (!(lo < hi)) {  // disjoint supports: slab evidence underflows to zero
    lo = r - 14.0 * ss;
    hi = r + 14.0 * ss;
  }
  auto slab_density = [&](double x) {
    return rho * (normal_pdf(x / sv) / sv) * (normal_pdf((x - r) / ss) / ss);
  };
  const double tol = 1e-12 * std::max(coarse_scale(slab_density, lo, hi), spike * 1e-3);
  const double s0 = integrate(slab_density, lo, hi, tol);
  const double z = spike + s0;
  const double c =
      integrate([&](double x) { return slab_density(x) * x; }, lo, hi, tol) / z;
  // Moments about the pass-one mean keep the variance cancellation-free; the
  // point mass at zero contributes (0 - c) terms analytically.
  const double s1c =
      integrate([&](double x) { return slab_density(x) * (x - c); }, lo, hi, tol);
  const double s2c =
      integrate([&](double x) { return slab_density(x) * (x - c) * (x - c); }, lo, hi, tol);
  const double e1c = (spike * (0.0 - c) + s1c) / z;
  const double e2c = (spike * c * c + s2c) / z;
  Moments out;
  out.mean = c + e1c;
  out.var = e2c - e1c * e1c;
  return out;
}

double denoiser_derivative_fd(const Prior& prior, double r, double s2) {
  const double h = 1e-6 * std::max(1.0, std::abs(r));
  Vec xp, xm, tau;
  prior.denoise(Vec{r + h}, Vec{s2}, xp, tau);
  prior.denoise(Vec{r - h}, Vec{s2}, xm, tau);
  return (xp[0] - xm[0]) / (2.0 * h);
}

Vec dense_solve(Matrix s, Vec b) {
  const std::size_t n = s.rows();
  if (s.cols() != n || b.size() != n) throw ContractError("dense_solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(s(i, col)) > std::abs(s(piv, col))) piv = i;
    if (s(piv, col) == 0.0) throw SolverError("dense_solve: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(s(piv, j), s(col, j));
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / s(col, col);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double factor = s(i, col) * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) s(i, j) -= factor * s(col, j);
      b[i] -= factor * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / s(i, i);
  return x;
}

Matrix dense_inverse(Matrix s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) throw ContractError("dense_inverse: matrix not square");
  Matrix aug = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(s(i, col)) > std::abs(s(piv, col))) piv = i;
    if (s(piv, col) == 0.0) throw SolverError("dense_inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(s(piv, j), s(col, j));
        std::swap(aug(piv, j), aug(col, j));
      }
    const double inv = 1.0 / s(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      s(col, j) *= inv;
      aug(col, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const double factor = s(i, col);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        s(i, j) -= factor * s(col, j);
        aug(i, j) -= factor * aug(col, j);
      }
    }
  }
  return aug;
}

// ---------------------------------------------------------------------------
// Selftest suites
// ---------------------------------------------------------------------------

namespace {

struct SuiteResult {
  const char* name;
  bool pass;
  double worst;
};

double rel_linf(const Vec& a, const Vec& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

SuiteResult suite_message_roundtrip() {
  Rng rng(101);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double vp = std::pow(10.0, -8.0 + 16.0 * rng.uniform01());
    const double frac = 0.01 + 0.98 * rng.uniform01();
    const double v_post = vp * frac;
    const double mp = 10.0 * rng.normal();
    const double m_post = 10.0 * rng.normal();
    const GaussianBelief prior = GaussianBelief::constant(1, mp, vp);
    const GaussianBelief post = GaussianBelief::constant(1, m_post, v_post);
    const GaussianBelief back = combine(extrinsic(post, prior), prior);
    worst = std::max(worst, std::abs(back.mean[0] - m_post) / std::max(1e-30, std::abs(m_post)));
    worst = std::max(worst, std::abs(back.var[0] - v_post) / v_post);
  }
  return {"message extrinsic/combine round trip", worst <= 1e-12, worst};
}

SuiteResult suite_probit_moments() {
  Rng rng(202);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double v = std::pow(10.0, -4.0 + 8.0 * rng.uniform01());
    const double sigma = std::pow(10.0, -3.0 + 4.0 * rng.uniform01());
    const double y = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const double u = -6.0 + 12.0 * rng.uniform01();
    const double m = u * std::sqrt(v + sigma * sigma);
    double pm, pv;
    ProbitChannel::moments_one(y, m, v, sigma, pm, pv);
    const Moments q = probit_moments(y, m, v, sigma);
    worst = std::max(worst, std::abs(pm - q.mean));
    worst = std::max(worst, std::abs(pv - q.var));
  }
  return {"probit moments vs quadrature", worst <= 1e-8, worst};
}

SuiteResult suite_bg_moments() {
  Rng rng(303);
  double worst = 0.0;
  const double rhos[] = {0.05, 0.1, 0.3, 1.0};
  for (int k = 0; k < 200; ++k) {
    const double rho = rhos[k % 4];
    const BernoulliGaussianPrior prior(rho);
    const double s2 = std::pow(10.0, -4.0 + 8.0 * rng.uniform01());
    const double r = rng.normal() * 2.0 * std::sqrt(s2 + prior.slab_var());
    double xh, tau;
    prior.denoise_one(r, s2, xh, tau);
    const Moments q = bernoulli_gauss_moments(rho, prior.slab_var(), r, s2);
    worst = std::max(worst, std::abs(xh - q.mean));
    worst = std::max(worst, std::abs(tau - q.var));
  }
  return {"spike-slab denoiser vs quadrature", worst <= 1e-9, worst};
}

SuiteResult suite_divergence_fd() {
  Rng rng(404);
  double worst = 0.0;
  const BernoulliGaussianPrior prior(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double s2 = std::pow(10.0, -4.0 + 8.0 * rng.uniform01());
    const double r = rng.normal() * 2.0 * std::sqrt(s2 + 10.0);
    const Vec d = prior.divergence(Vec{r}, Vec{s2});
    const double fd = denoiser_derivative_fd(prior, r, s2);
    worst = std::max(worst, std::abs(d[0] - fd) / std::max(1e-12, std::abs(fd)));
  }
  return {"denoiser divergence vs finite differences", worst <= 1e-5, worst};
}

SuiteResult suite_lmmse() {
  double worst = 0.0;
  for (int inst = 0; inst < 10; ++inst) {
    Rng rng(505 + inst);
    const std::size_t n = 16, m = 32;
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal() / std::sqrt(double(m));
    Vec y(m), sigma2(m), r2(n);
    for (auto& v : y) v = rng.normal();
    for (auto& v : sigma2) v = 0.1 + rng.uniform01();
    for (auto& v : r2) v = rng.normal();
    const double gamma2 = 0.5 + rng.uniform01();

    const VampLmmseResult lr = vamp_lmmse_half(r2, gamma2, a, y, sigma2);
    Vec inv_noise(m);
    for (std::size_t i = 0; i < m; ++i) inv_noise[i] = 1.0 / sigma2[i];
    Matrix s = weighted_gram(a, inv_noise);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += gamma2;
    Vec rhs = weighted_tmatvec(a, inv_noise, y);
    for (std::size_t i = 0; i < n; ++i) rhs[i] += gamma2 * r2[i];
    worst = std::max(worst, rel_linf(lr.x_hat2, dense_solve(s, rhs)));

    Vec alpha(n);
    for (auto& v : alpha) v = 0.2 + rng.uniform01();
    const SblLmmseResult sr = sbl_lmmse(alpha, a, y, sigma2);
    Matrix s2m = weighted_gram(a, inv_noise);
    for (std::size_t i = 0; i < n; ++i) s2m(i, i) += alpha[i];
    worst = std::max(worst,
                     rel_linf(sr.x_hat2, dense_solve(s2m, weighted_tmatvec(a, inv_noise, y))));
  }
  return {"LMMSE vs dense solve", worst <= 1e-10, worst};
}

SuiteResult suite_gamp_equivalence() {
  double worst = 0.0;
  for (int inst = 0; inst < 3; ++inst) {
    MatrixSpec ms{128, 32, 1.0, 900 + static_cast<std::uint64_t>(inst)};
    SignalSpec ss{32, 0.25, 0.0, 1900 + static_cast<std::uint64_t>(inst)};
    const OneBitProblem p = make_onebit_problem(ms, ss, 30.0);
    GlmLoopConfig cfg;
    cfg.t_max = 15;
    cfg.iter_slm = 1;
    cfg.solver = Solver::GrAmp;
    const GlmTrace tr_a = run(p.problem, cfg, &p.x_true);
    cfg.solver = Solver::Gamp;
    const GlmTrace tr_b = run(p.problem, cfg, &p.x_true);
    if (tr_a.iterates.size() != tr_b.iterates.size()) return {"Gr-AMP(1) == GAMP", false, 1.0};
    for (std::size_t t = 0; t < tr_a.iterates.size(); ++t)
      worst = std::max(worst, rel_linf(tr_a.iterates[t].x_hat, tr_b.iterates[t].x_hat));
  }
  return {"Gr-AMP(1) == GAMP", worst <= 1e-8, worst};
}

SuiteResult suite_matrix_generation() {
  double worst = 0.0;
  const double kappas[] = {1.0, 1e2, 1e4, 1e6};
  for (double kappa : kappas) {
    MatrixSpec ms{64, 16, kappa, 4242};
    const Matrix a = conditioned_matrix(ms);
    const std::vector<double> sv = singular_values(a);
    const double realized = sv.front() / sv.back();
    worst = std::max(worst, std::abs(realized - kappa) / kappa);
  }
  const Matrix q = haar_orthogonal(64, 777);
  const Matrix g = gram(q);
  double ortho = 0.0;
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j)
      ortho = std::max(ortho, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  const bool pass = worst <= 1e-10 && ortho <= 1e-12;
  return {"conditioned matrix generation", pass, std::max(worst, ortho)};
}

SuiteResult suite_awgn_reduction() {
  Rng rng(606);
  const std::size_t m = 24;
  Vec y(m), mean(m), var(m);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = rng.normal();
    mean[i] = rng.normal();
    var[i] = 0.5 + rng.uniform01();
  }
  const AwgnChannel ch(0.37);
  const GaussianBelief pd = ch.pseudo_data(y, GaussianBelief(mean, var));
  bool exact = true;
  for (std::size_t i = 0; i < m; ++i)
    exact = exact && pd.mean[i] == y[i] && pd.var[i] == 0.37;
  return {"AWGN pseudo-data identity", exact, exact ? 0.0 : 1.0};
}

}  // namespace

int selftest(bool verbose) {
  const SuiteResult results[] = {
      suite_message_roundtrip(), suite_probit_moments(),   suite_bg_moments(),
      suite_divergence_fd(),     suite_lmmse(),            suite_gamp_equivalence(),
      suite_matrix_generation(), suite_awgn_reduction(),
  };
  int failures = 0;
  for (const SuiteResult& r : results) {
    if (!r.pass) ++failures;
    if (verbose)
      std::printf("selftest %-45s %s  (worst %.3e)\n", r.name, r.pass ? "PASS" : "FAIL",
                  r.worst);
  }
  return failures;
}

}  // namespace glmt::oracle
