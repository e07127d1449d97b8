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
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace glmt {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ContractError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

bool all_finite(const Vec& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

Vec matvec(const Matrix& a, const Vec& x) {
  if (x.size() != a.cols()) throw ContractError("matvec: dimension mismatch");
  Vec out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    out[i] = s;
  }
  return out;
}

Vec tmatvec(const Matrix& a, const Vec& y) {
  if (y.size() != a.rows()) throw ContractError("tmatvec: dimension mismatch");
  Vec out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    const double yi = y[i];
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += row[j] * yi;
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix squared_entries(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  const double* src = a.data();
  double* dst = s.data();
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) dst[k] = src[k] * src[k];
  return s;
}

Matrix gram(const Matrix& a) {
  Vec ones(a.rows(), 1.0);
  return weighted_gram(a, ones);
}

Matrix weighted_gram(const Matrix& a, const Vec& w) {
  if (w.size() != a.rows()) throw ContractError("weighted_gram: weight length mismatch");
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* row = a.row(r);
    const double wr = w[r];
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = wr * row[i];
      double* grow = g.row(i);
      for (std::size_t j = i; j < n; ++j) grow[j] += ri * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

Vec weighted_tmatvec(const Matrix& a, const Vec& w, const Vec& y) {
  if (w.size() != a.rows() || y.size() != a.rows())
    throw ContractError("weighted_tmatvec: dimension mismatch");
  Vec out(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* row = a.row(r);
    const double wy = w[r] * y[r];
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += row[j] * wy;
  }
  return out;
}

double trace_product_sym(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractError("trace_product_sym: shape mismatch");
  const double* pa = a.data();
  const double* pb = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) s += pa[k] * pb[k];
  return s;
}

Vec rowwise_quadratic(const Matrix& a, const Matrix& c) {
  if (a.cols() != c.rows() || c.rows() != c.cols())
    throw ContractError("rowwise_quadratic: shape mismatch");
  const std::size_t n = a.cols();
  Vec out(a.rows(), 0.0);
  Vec tmp(n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* row = a.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      const double* crow = c.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += crow[j] * row[j];
      tmp[i] = s;
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += row[i] * tmp[i];
    out[r] = q;
  }
  return out;
}

Matrix cholesky_lower(const Matrix& s) {
  if (s.rows() != s.cols()) throw ContractError("cholesky_lower: matrix not square");
  const std::size_t n = s.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw SolverError("cholesky_lower: matrix numerically indefinite at pivot " +
                        std::to_string(j) + " (value " + std::to_string(d) +
                        "); system too ill-conditioned");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return l;
}

Vec cholesky_solve(const Matrix& l, const Vec& b) {
  const std::size_t n = l.rows();
  if (b.size() != n) throw ContractError("cholesky_solve: dimension mismatch");
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    const double* row = l.row(i);
    for (std::size_t k = 0; k < i; ++k) v -= row[k] * y[k];
    y[i] = v / row[i];
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double v = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
    x[ii] = v / l(ii, ii);
  }
  return x;
}

Matrix spd_inverse(const Matrix& s) {
  const std::size_t n = s.rows();
  const Matrix l = cholesky_lower(s);
  // Invert L in place, then assemble S^-1 = L^-T L^-1.
  Matrix li(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    li(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = 0.0;
      for (std::size_t k = j; k < i; ++k) v += l(i, k) * li(k, j);
      li(i, j) = -v / l(i, i);
    }
  }
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t k = i; k < n; ++k) v += li(k, i) * li(k, j);
      inv(i, j) = v;
      inv(j, i) = v;
    }
  }
  return inv;
}

void householder_qr(const Matrix& a, Matrix& q, Matrix& r) {
  if (a.rows() != a.cols()) throw ContractError("householder_qr: matrix not square");
  const std::size_t n = a.rows();
  r = a;
  q = Matrix::identity(n);
  Vec v(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double nrm = 0.0;
    for (std::size_t i = k; i < n; ++i) nrm += r(i, k) * r(i, k);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double alpha = (r(k, k) >= 0.0) ? -nrm : nrm;
    double vnorm_sq = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k) - ((i == k) ? alpha : 0.0);
      vnorm_sq += v[i] * v[i];
    }
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;
    // R <- H R
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    // Q <- Q H
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }
}

std::vector<double> singular_values(const Matrix& a) {
  // Orient so that columns are the short dimension.
  const bool flip = a.rows() < a.cols();
  const std::size_t m = flip ? a.cols() : a.rows();
  const std::size_t n = flip ? a.rows() : a.cols();
  if (m == 0 || n == 0) return {};

  // Column-major working copy in extended precision.
  std::vector<long double> w(m * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (flip)
        w[i * m + j] = a(i, j);
      else
        w[j * m + i] = a(i, j);
    }

  const long double tol = 1e-17L;
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      long double* cp = w.data() + p * m;
      for (std::size_t q = p + 1; q < n; ++q) {
        long double* cq = w.data() + q * m;
        long double app = 0.0L, aqq = 0.0L, apq = 0.0L;
        for (std::size_t i = 0; i < m; ++i) {
          app += cp[i] * cp[i];
          aqq += cq[i] * cq[i];
          apq += cp[i] * cq[i];
        }
        if (app == 0.0L || aqq == 0.0L) continue;
        if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
        rotated = true;
        const long double zeta = (aqq - app) / (2.0L * apq);
        const long double t =
            (zeta >= 0.0L ? 1.0L : -1.0L) / (std::abs(zeta) + std::sqrt(1.0L + zeta * zeta));
        const long double c = 1.0L / std::sqrt(1.0L + t * t);
        const long double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const long double vp = cp[i];
          const long double vq = cq[i];
          cp[i] = c * vp - s * vq;
          cq[i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double s = 0.0L;
    const long double* cj = w.data() + j * m;
    for (std::size_t i = 0; i < m; ++i) s += cj[i] * cj[i];
    sv[j] = static_cast<double>(std::sqrt(s));
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

}  // namespace glmt
