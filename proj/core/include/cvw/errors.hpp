// Copyright 2026 The cvw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cvw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A block that has to be inverted (V_A, V_B, a local block) is singular.
class SingularBlock : public Error {
 public:
  using Error::Error;
};

/// The covariance matrix violates the Robertson-Schroedinger condition.
class NonPhysical : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Two routes to the same verdict disagreed beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Some coordinate-momentum covariance is not zero. Carries the worst entry
/// (indices refer to the interleaved ordering).
class NotStandardForm : public Error {
 public:
  NotStandardForm(double value, std::size_t row, std::size_t col)
      : Error("covariance matrix is not in standard form: |sigma(q,p)| = " +
              std::to_string(value) + " at (" + std::to_string(row) + ", " +
              std::to_string(col) + ")"),
        value_(value),
        row_(row),
        col_(col) {}

  double value() const noexcept { return value_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  double value_;
  std::size_t row_;
  std::size_t col_;
};

}  // namespace cvw
