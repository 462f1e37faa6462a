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

// Two-mode standard form: closed-form symplectic spectra and the local
// symplectic reduction.

#include <algorithm>
#include <cmath>

#include "cvw/covariance.hpp"
#include "cvw/errors.hpp"

namespace cvw {
namespace {

double clamp_discriminant(double delta, double scale) {
  if (delta >= 0.0) return delta;
  if (delta >= -1e-12 * std::max(1.0, scale)) return 0.0;
  throw NonPhysical("two_mode_spectra: negative discriminant " +
                    std::to_string(delta));
}

// Symmetric 2x2 M with det 1 such that M A M = sqrt(det A) I.
Eigen::Matrix2d local_normaliser(const Eigen::Matrix2d& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
  const Eigen::Vector2d lambda = es.eigenvalues();
  if (lambda.minCoeff() <= 0.0) {
    throw NonPhysical("standard_form_reduce_two_mode: local block is not positive definite");
  }
  const double root_det = std::sqrt(lambda(0) * lambda(1));
  const Eigen::Vector2d scale = (lambda / root_det).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * scale.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

CovarianceMatrix TwoModeStandardParams::to_covariance() const {
  Eigen::Matrix4d m;
  // clang-format off
  m << b1, 0.0, c,   0.0,
       0.0, b1, 0.0, d,
       c,  0.0, b2,  0.0,
       0.0, d,  0.0, b2;
  // clang-format on
  return CovarianceMatrix(m);
}

StandardFormCM TwoModeStandardParams::to_standard() const {
  Eigen::Matrix2d vq;
  Eigen::Matrix2d vp;
  vq << b1, c, c, b2;
  vp << b1, d, d, b2;
  return StandardFormCM(vq, vp);
}

TwoModeSpectra two_mode_spectra(const TwoModeStandardParams& p) {
  const double det_v = (p.b1 * p.b2 - p.c * p.c) * (p.b1 * p.b2 - p.d * p.d);
  if (!(det_v > 0.0)) {
    throw NonPhysical("two_mode_spectra: covariance matrix is not positive definite");
  }
  const double diff = p.b1 * p.b1 - p.b2 * p.b2;
  const double x = p.b1 * p.b1 + p.b2 * p.b2 + 2.0 * p.c * p.d;
  const double x_pt = p.b1 * p.b1 + p.b2 * p.b2 - 2.0 * p.c * p.d;

  TwoModeSpectra s;
  // Factored forms of the discriminants; they avoid cancellation for pure states.
  s.delta = clamp_discriminant(
      diff * diff + 4.0 * (p.b1 * p.c + p.b2 * p.d) * (p.b2 * p.c + p.b1 * p.d), x * x);
  s.delta_pt = clamp_discriminant(
      diff * diff + 4.0 * (p.b1 * p.c - p.b2 * p.d) * (p.b2 * p.c - p.b1 * p.d),
      x_pt * x_pt);

  // kappa_+^2 kappa_-^2 = det V; the smaller root comes from the quotient.
  const double kp2 = 0.5 * (x + std::sqrt(s.delta));
  const double kp2_pt = 0.5 * (x_pt + std::sqrt(s.delta_pt));
  s.kappa_plus = std::sqrt(kp2);
  s.kappa_minus = std::sqrt(det_v / kp2);
  s.kappa_plus_pt = std::sqrt(kp2_pt);
  s.kappa_minus_pt = std::sqrt(det_v / kp2_pt);
  return s;
}

TwoModeReduction standard_form_reduce_two_mode(const CovarianceMatrix& v) {
  if (v.n_modes() != 2) {
    throw DimensionError("standard_form_reduce_two_mode: expected a two-mode CM");
  }
  if (!validate_bona_fide(v).bona_fide()) {
    throw NonPhysical("standard_form_reduce_two_mode: input is not a bona fide CM");
  }
  const Eigen::Matrix4d m = v.matrix();
  const Eigen::Matrix2d a = m.block<2, 2>(0, 0);
  const Eigen::Matrix2d b = m.block<2, 2>(2, 2);
  const Eigen::Matrix2d c = m.block<2, 2>(0, 2);

  // Williamson on each local block: rotation + one-mode squeeze.
  const Eigen::Matrix2d la = local_normaliser(a);
  const Eigen::Matrix2d lb = local_normaliser(b);
  const Eigen::Matrix2d c1 = la * c * lb.transpose();

  // A signed SVD with proper rotations diagonalises the cross block.
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(c1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d u = svd.matrixU();
  Eigen::Matrix2d w = svd.matrixV();
  Eigen::Vector2d sv = svd.singularValues();
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    sv(1) = -sv(1);
  }
  if (w.determinant() < 0.0) {
    w.col(1) *= -1.0;
    sv(1) = -sv(1);
  }

  TwoModeReduction out;
  out.local.setZero();
  out.local.block<2, 2>(0, 0) = u.transpose() * la;
  out.local.block<2, 2>(2, 2) = w.transpose() * lb;
  out.params.b1 = std::sqrt(a.determinant());
  out.params.b2 = std::sqrt(b.determinant());
  out.params.c = sv(0);
  out.params.d = sv(1);
  return out;
}

}  // namespace cvw
