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
 * @file generators.hpp
 * @brief Reference and random bona fide covariance matrices.
 *
 * Random output is driven by cvw::Rng (std::mt19937_64 with explicit
 * transforms), so a seed pins the same matrix on every platform.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvw/covariance.hpp"

namespace cvw {

enum class Side { A, B };

const char* to_string(Side s) noexcept;
/// Throws InvalidParameter.
Side side_from_string(const std::string& s);

CovarianceMatrix vacuum(int n_modes);

/// Diagonal CM with variance nbar_k + 1/2 in mode k.
CovarianceMatrix thermal(const std::vector<double>& nbar);

/// Two-mode squeezed vacuum: b = cosh(2r)/2, c = -d = sinh(2r)/2.
CovarianceMatrix tmsv(double r);

/// tmsv(r) with nbar * I added to one party's 2 x 2 block.
CovarianceMatrix noisy_tmsv(double r, double nbar, Side side);

/// S (D (+) D) S^T in block ordering with S = S_q (+) S_q^-T, nu_k uniform in
/// [1/2, 3], S_q standard normal with condition number below 50. n_alice must
/// be n_modes - 1. Throws Error when the resampling budget runs out.
CovarianceMatrix random_standard(int n_modes, int n_alice, std::uint64_t seed);

/// The symplectic eigenvalues sampled by random_standard for this seed.
std::vector<double> random_standard_spectrum(int n_modes, std::uint64_t seed);

struct GeneratorSpec {
  enum class Kind { vacuum, thermal, tmsv, noisy_tmsv, random_standard };

  Kind kind = Kind::vacuum;
  int n_modes = 2;
  double r = 0.0;
  /// One value per mode for thermal; the first value for noisy_tmsv.
  std::vector<double> nbar;
  Side noise_side = Side::A;
  std::uint64_t seed = 0;
};

const char* to_string(GeneratorSpec::Kind k) noexcept;
/// Throws InvalidParameter.
GeneratorSpec::Kind generator_kind_from_string(const std::string& s);

/// Throws InvalidParameter for out-of-range parameters.
CovarianceMatrix generate(const GeneratorSpec& spec);

}  // namespace cvw
