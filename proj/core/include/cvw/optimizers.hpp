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
 * @file optimizers.hpp
 * @brief Minima of the normalised uncertainty sums.
 *
 * Domains. sigma_plus / sigma_minus are minimised over the closed positive
 * orthant of (alpha, beta). sigma_ab and sigma_ba are minimised over real
 * weights with a positive denominator: their stationarity systems are linear
 * and carry no sign constraint, and only that domain makes
 * min sigma_ab >= 1 equivalent to det V / det V_A >= 1/4. The boundary flag
 * of an ab/ba result reports that the minimiser is not strictly positive.
 */

#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "cvw/covariance.hpp"
#include "cvw/observables.hpp"

namespace cvw {

struct OptimizerConfig {
  double tol = 1e-10;
  int max_iters = 500;
  int max_restarts = 8;
  double positivity_floor = 1e-10;
  std::uint64_t rng_seed = 0;
};

struct MinimizationResult {
  double value = 0.0;
  /// Minimiser, gauge-fixed so that the denominator equals 1 and
  /// (Delta Q)^2 == (Delta P)^2.
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  bool converged = false;
  /// Some weight sits at the positivity floor (or is not positive at all).
  bool boundary_flag = false;
  int iterations = 0;
  int restarts_used = 0;
};

/// Two-mode closed forms: plus -> 2 kappa_-^PT, minus -> 2 kappa_-.
double min_sigma_pm_two_mode(const TwoModeStandardParams& params, SignVariant s);

/// Alternating exact block minimisation over the positive orthant with
/// multistart (all-ones point plus cfg.max_restarts random simplex points) and
/// an active-set eigenvalue polish.
MinimizationResult min_sigma_pm_numeric(const StandardFormCM& v, SignVariant s,
                                        const OptimizerConfig& cfg = {});

/// 2 sqrt(det V / det V_A), via block determinants. Throws SingularBlock.
double min_sigma_ab(const StandardFormCM& v);

/// Solves the two linear stationarity systems for Alice's weights, then the
/// one-variable problem in epsilon = alpha_{N+1} / beta_{N+1}.
MinimizationResult min_sigma_ab_numeric(const StandardFormCM& v,
                                        const OptimizerConfig& cfg = {});

/// 2 x (smallest symplectic eigenvalue of V / V_B).
double min_sigma_ba(const StandardFormCM& v);

/// Eliminates Bob's weights through their stationarity conditions and solves
/// the reduced N-mode problem on the Schur complement as a generalised
/// symmetric eigenproblem.
MinimizationResult min_sigma_ba_numeric(const StandardFormCM& v,
                                        const OptimizerConfig& cfg = {});

/// Numeric minimiser for any functional (dispatch).
MinimizationResult minimize(const StandardFormCM& v, Functional f,
                            const OptimizerConfig& cfg = {});

struct BaUnsteerability {
  bool matrix_ok = false;  ///< V/V_B + (i/2) J_A >= -tol
  bool det_ok = false;     ///< det V / det V_B >= 2^(-2N) - tol
  Eigen::MatrixXd schur;   ///< V / V_B
  double det_ratio = 0.0;
  double min_eigenvalue = 0.0;       ///< of V/V_B + (i/2) J_A
  double full_min_eigenvalue = 0.0;  ///< of V + (i/2) J_A (+) 0_B
};

/// Throws SingularBlock if V_B is not positive definite.
BaUnsteerability check_ba_unsteerability(const CovarianceMatrix& v, double tol = 1e-9);

struct AbUnsteerability {
  bool matrix_ok = false;  ///< V + 0_A (+) (i/2) J_B >= -tol
  bool det_ok = false;     ///< det V / det V_A >= 1/4 - tol
  Eigen::MatrixXd schur;   ///< V / V_A
  double det_ratio = 0.0;
  double min_eigenvalue = 0.0;       ///< of V + 0_A (+) (i/2) J_B
  double schur_min_eigenvalue = 0.0; ///< of V/V_A + (i/2) J_B
};

/// Throws SingularBlock if V_A is not positive definite.
AbUnsteerability check_ab_unsteerability(const CovarianceMatrix& v, double tol = 1e-9);

struct GridSpec {
  enum class Kind {
    lattice,  ///< every point of a uniform lattice; refinement m -> 2m-1 nests
    random,   ///< uniform samples, then a local random search near the best
  };
  Kind kind = Kind::random;
  int points_per_dim = 9;
  long samples = 100000;
  std::uint64_t seed = 0;
  double refine_fraction = 0.5;
};

/// Derivative-free oracle. Uses only functional evaluations, with the joint
/// scale of (alpha, beta) eliminated: for fixed directions u, v the minimum
/// over scales is 2 sqrt(Q(u) P(v)) / |D(u, v)|. Searches the same domain as
/// the corresponding numeric minimiser. Returns an upper bound on the minimum.
/// Throws InvalidParameter for fewer than 3 lattice points per dimension.
double brute_force_min(const StandardFormCM& v, Functional f, const GridSpec& grid);

}  // namespace cvw
