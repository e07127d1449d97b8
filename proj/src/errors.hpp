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

#include <stdexcept>
#include <string>

namespace glmt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (length mismatch, non-finite input, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// User-supplied data is invalid (e.g. a sign observation that is not +/-1).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Config or data file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside a solver (e.g. singular LMMSE system).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace glmt
