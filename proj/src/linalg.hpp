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

#include <cstddef>
#include <vector>

namespace glmt {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles. Sized for desk-scale inference
/// problems (hundreds to a few thousand rows); no sparsity, no views.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Vector helpers -------------------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);
bool all_finite(const Vec& a);

// Matrix-vector products -----------------------------------------------------

Vec matvec(const Matrix& a, const Vec& x);   // A x
Vec tmatvec(const Matrix& a, const Vec& y);  // A^T y

// Matrix products ------------------------------------------------------------

Matrix transpose(const Matrix& a);
Matrix squared_entries(const Matrix& a);  // element-wise A .* A
Matrix gram(const Matrix& a);             // A^T A

/// A^T diag(w) A, exploiting symmetry.
Matrix weighted_gram(const Matrix& a, const Vec& w);
/// A^T diag(w) y.
Vec weighted_tmatvec(const Matrix& a, const Vec& w, const Vec& y);

/// sum_ij A_ij * B_ij for symmetric A, B of equal shape; equals trace(A B).
double trace_product_sym(const Matrix& a, const Matrix& b);

/// Quadratic form row_a(A) * C * row_a(A)^T for every row a; the diagonal of
/// A C A^T without materializing the M x M product.
Vec rowwise_quadratic(const Matrix& a, const Matrix& c);

// Factorizations -------------------------------------------------------------

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
/// Throws SolverError with a pivot diagnostic when the matrix is numerically
/// indefinite.
Matrix cholesky_lower(const Matrix& s);

/// Solves S x = b given the Cholesky factor L of S.
Vec cholesky_solve(const Matrix& l, const Vec& b);

/// Full inverse of a symmetric positive definite matrix via Cholesky.
Matrix spd_inverse(const Matrix& s);

/// Householder QR of a square matrix; a = q * r with q orthogonal and r
/// upper triangular (diagonal signs unconstrained).
void householder_qr(const Matrix& a, Matrix& q, Matrix& r);

/// Singular values in descending order via one-sided Jacobi with extended
/// precision accumulation. Small singular values are computed to high
/// relative accuracy, which a Gram-matrix eigensolve cannot deliver once the
/// condition number is large. Intended for moderate sizes (<= a few hundred).
std::vector<double> singular_values(const Matrix& a);

}  // namespace glmt
