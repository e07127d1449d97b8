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

#include <string>

#include "linalg.hpp"

namespace glmt {

// Plain text matrix format for cross-implementation fixtures:
// first line "rows cols", then row-major whitespace-separated values written
// with 17 significant digits (round-trip exact for binary64). Vectors are
// stored as n x 1 matrices; read_vector also accepts 1 x n.

void write_matrix_text(const Matrix& a, const std::string& path);
Matrix read_matrix_text(const std::string& path);

void write_vector_text(const Vec& v, const std::string& path);
Vec read_vector_text(const std::string& path);

/// Shortest exact formatting used across text outputs ("%.17g").
std::string format_double(double v);

}  // namespace glmt
