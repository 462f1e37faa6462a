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

/**
 * @file io.hpp
 * @brief JSON files for covariance matrices, verdicts and reports.
 *
 * CM file:
 *
 *     {"n_modes": 2, "n_alice": 1, "ordering": "interleaved",
 *      "matrix": [[...], ...]}
 *
 * Output is deterministic: keys in fixed order, doubles printed with 17
 * significant digits, so equal inputs give byte-identical text.
 */

#pragma once

#include <optional>
#include <string>

#include "cvw/covariance.hpp"
#include "cvw/criteria.hpp"

namespace cvw {

/// "%.17g". Throws NonFiniteError for NaN or infinity.
std::string format_number(double x);

/// Throws ParseError for malformed documents and DimensionError when the
/// sizes disagree (n_alice must be n_modes - 1).
CovarianceMatrix cm_from_json(const std::string& text);
std::string cm_to_json(const CovarianceMatrix& v, Ordering ordering = Ordering::interleaved);

/// Throws Error when the file cannot be read or written.
CovarianceMatrix read_cm_file(const std::string& path);
void write_cm_file(const std::string& path, const CovarianceMatrix& v);

std::string verdict_to_json(const CorrelationVerdict& v);
CorrelationVerdict verdict_from_json(const std::string& text);

struct Report {
  std::string input_descriptor;
  CorrelationVerdict verdict;
  /// Emitted only when set, so that reports stay reproducible byte for byte.
  std::optional<double> timing_ms;
  double tol = 1e-9;
  bool gaussian = true;
  OptimizerConfig optimizer;

  bool operator==(const Report& other) const;
};

std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

}  // namespace cvw
