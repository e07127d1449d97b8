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
#include "text_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace glmt {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_text(const Matrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

Matrix read_matrix_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw ParseError("bad matrix header (expected 'rows cols') in " + path);
  Matrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) {
      double v;
      if (!(in >> v))
        throw ParseError("truncated matrix data in " + path + " at element (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
    }
  return a;
}

void write_vector_text(const Vec& v, const std::string& path) {
  Matrix a(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) a(i, 0) = v[i];
  write_matrix_text(a, path);
}

Vec read_vector_text(const std::string& path) {
  const Matrix a = read_matrix_text(path);
  if (a.cols() != 1 && a.rows() != 1)
    throw ParseError("expected a vector (one row or one column) in " + path);
  Vec v(a.rows() * a.cols());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.data()[k];
  return v;
}

}  // namespace glmt
