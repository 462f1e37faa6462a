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
 * @file criteria.hpp
 * @brief Physicality, separability and steering verdicts for (N vs 1) CMs.
 *
 * Every threshold comparison uses the single tolerance CertifyConfig::tol.
 * When a witness lands within tol of its threshold the verdict keeps the
 * inequality's side it falls on and sets the matching "marginal_*" witness
 * to 1.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvw/covariance.hpp"
#include "cvw/generators.hpp"
#include "cvw/optimizers.hpp"

namespace cvw {

enum class Ternary { yes, no, undecided };

const char* to_string(Ternary t) noexcept;
/// Throws ParseError.
Ternary ternary_from_string(const std::string& s);

struct CertifyConfig {
  double tol = 1e-9;
  OptimizerConfig optimizer;
  /// Caller asserts the state is Gaussian; otherwise gaussian_separable is
  /// undecided.
  bool gaussian = true;
  /// Run the numeric sigma_plus / sigma_minus minimisers.
  bool sigma_pm = true;
};

struct CorrelationVerdict {
  bool physical = false;
  /// The remaining flags are empty when the input is not physical.
  std::optional<bool> ppt;
  std::optional<bool> separable_necessary_met;
  std::optional<Ternary> gaussian_separable;
  std::optional<bool> steerable_a_to_b;
  std::optional<bool> steerable_b_to_a;
  /// Sorted by name.
  std::map<std::string, double> witnesses;

  bool operator==(const CorrelationVerdict& other) const = default;
};

/// Two-mode input is first reduced to standard form; larger inputs must
/// already be in standard form (NotStandardForm otherwise). Throws
/// ConsistencyError when the determinant and matrix forms of the A-to-B
/// condition disagree outside the dead-band.
CorrelationVerdict certify(const CovarianceMatrix& v, const CertifyConfig& cfg = {});

struct OneWaySearchConfig {
  std::vector<double> r_values{0.25, 0.5, 0.7, 1.0};
  std::vector<double> nbar_values{0.1, 0.2, 0.4, 0.6, 0.8};
  std::vector<Side> sides{Side::A, Side::B};
  /// The grid is widened (range doubled, spacing halved) this many times
  /// before NotFound is thrown.
  int widen_rounds = 3;
  CertifyConfig certify;
};

struct OneWayExample {
  CovarianceMatrix cm;
  double r = 0.0;
  double nbar = 0.0;
  Side side = Side::A;
  CorrelationVerdict verdict;
};

/// First noisy_tmsv point of the grid (r, then nbar, then side order) whose
/// verdict is steerable in exactly one direction.
OneWayExample one_way_example_search(const OneWaySearchConfig& cfg = {});

/// sgn(kappa_-^PT - kappa_-) == sgn(d). Throws InvalidParameter if |d| <= 1e-6.
bool sign_rule_check(const TwoModeStandardParams& params);

}  // namespace cvw
