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
 * @file observables.hpp
 * @brief Variances of the EPR-like observables
 *
 *     Q(alpha)   = sum_{j<=N} alpha_j q_j - alpha_{N+1} q_{N+1}
 *     P+-(beta)  = sum_{j<=N} beta_j  p_j +- beta_{N+1}  p_{N+1}
 *
 * and the normalised uncertainty sums built from them. All functionals take a
 * StandardFormCM: sigma(q, p) covariances never enter the variances.
 */

#pragma once

#include <Eigen/Dense>

#include <string>

#include "cvw/covariance.hpp"

namespace cvw {

enum class SignVariant { plus, minus };

/// Strictly positive weight vectors (alpha, beta) of length N + 1.
class ParamVector {
 public:
  static constexpr double kMinComponent = 1e-12;

  /// Throws InvalidParameter on length mismatch, length < 2, or any
  /// component below kMinComponent.
  ParamVector(Eigen::VectorXd alpha, Eigen::VectorXd beta);

  const Eigen::VectorXd& alpha() const noexcept { return alpha_; }
  const Eigen::VectorXd& beta() const noexcept { return beta_; }
  int size() const noexcept { return static_cast<int>(alpha_.size()); }

  static ParamVector ones(int n_modes);

 private:
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
};

/// The normalised sums. Each is the variance sum (Delta Q)^2 + (Delta P)^2
/// divided by a bilinear form in (alpha, beta):
///   sigma_plus / sigma_minus : sum_l alpha_l beta_l     (P+ / P- variant)
///   sigma_ab                 : alpha_{N+1} beta_{N+1}   (P+)
///   sigma_ba                 : sum_{j<=N} alpha_j beta_j (P+)
enum class Functional { sigma_plus, sigma_minus, sigma_ab, sigma_ba };

SignVariant sign_of(Functional f) noexcept;
const char* to_string(Functional f) noexcept;
/// Throws InvalidParameter for unknown names.
Functional functional_from_string(const std::string& name);

/// Quadratic-form matrix of (Delta Q)^2: vq with the off-diagonal couplings
/// of the last row/column negated.
Eigen::MatrixXd q_form(const Eigen::MatrixXd& vq);
/// Quadratic-form matrix of (Delta P+-)^2.
Eigen::MatrixXd p_form(const Eigen::MatrixXd& vp, SignVariant s);

double variance_q(const Eigen::MatrixXd& vq, const Eigen::VectorXd& alpha);
double variance_p(const Eigen::MatrixXd& vp, const Eigen::VectorXd& beta,
                  SignVariant s);

/// |[Q, P+-]| = |sum_{j<=N} alpha_j beta_j -+ alpha_{N+1} beta_{N+1}|.
double commutator_bound(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                        SignVariant s);

struct UrCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// Sum-form uncertainty relation (Delta Q)^2 + (Delta P+-)^2 >= |[Q, P+-]|.
UrCheck sum_ur_check(const StandardFormCM& v, const ParamVector& p, SignVariant s);

struct ReidResult {
  double product = 0.0;  ///< Delta Q(lambda) * Delta P(mu)
  double bound = 0.0;    ///< |1 - lambda mu| / 2
  bool paradox = false;  ///< product < 1/2
};

/// Reid's pair q1 - lambda q2, p1 + mu p2 on a two-mode standard-form CM.
ReidResult reid_product(const StandardFormCM& v, double lambda, double mu);

double sigma_pm(const StandardFormCM& v, const ParamVector& p, SignVariant s);
double sigma_ab(const StandardFormCM& v, const ParamVector& p);
double sigma_ba(const StandardFormCM& v, const ParamVector& p);

/// Functional and its denominator on unconstrained real weights. Used by the
/// optimisers and the brute-force oracle, which probe sign-free domains.
double evaluate(const StandardFormCM& v, Functional f, const Eigen::VectorXd& alpha,
                const Eigen::VectorXd& beta);
double denominator(Functional f, const Eigen::VectorXd& alpha,
                   const Eigen::VectorXd& beta);

struct Gradient {
  Eigen::VectorXd d_alpha;
  Eigen::VectorXd d_beta;
};

/// Closed-form gradient (quotient rule over the quadratic and bilinear forms).
Gradient gradient(const StandardFormCM& v, Functional f, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXd& beta);

struct EulerResidual {
  double lhs_alpha = 0.0;  ///<  sum_j alpha_j dSigma/dalpha_j
  double lhs_beta = 0.0;   ///< -sum_j beta_j  dSigma/dbeta_j
  double rhs = 0.0;        ///< ((Delta Q)^2 - (Delta P)^2) / sum_l alpha_l beta_l
};

EulerResidual euler_residual(const StandardFormCM& v, const ParamVector& p,
                             SignVariant s);

}  // namespace cvw
