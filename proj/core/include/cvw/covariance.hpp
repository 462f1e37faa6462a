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
 * @file covariance.hpp
 * @brief Covariance matrices of multimode bosonic states and the matrix
 *        analysis used by the correlation criteria.
 *
 * Conventions: hbar = 1 with q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
 * so the vacuum has variance 1/2 in every quadrature. Matrices are stored in
 * mode-interleaved ordering (q1, p1, q2, p2, ...), in which the symplectic
 * form J is block diagonal with blocks [[0, 1], [-1, 0]].
 *
 * Bipartite operations treat the state as (N vs 1) modes: Alice holds the
 * first N modes and Bob holds exactly the last one.
 */

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvw {

enum class Ordering {
  interleaved,  ///< (q1, p1, q2, p2, ..., qn, pn)
  block,        ///< (q1, ..., qn, p1, ..., pn)
};

/// Symmetric tolerance used when accepting a matrix as a covariance matrix,
/// relative to its largest absolute entry.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Default absolute tolerance on the minimum eigenvalue of V + (i/2) J.
inline constexpr double kDefaultPhysicalityTol = 1e-9;

/// Real symmetric 2n x 2n second-moment matrix of an n-mode state.
///
/// The constructor checks shape, finiteness and symmetry; physicality is a
/// separate question answered by validate_bona_fide().
class CovarianceMatrix {
 public:
  /// `entries` are given in `ordering`. They are stored interleaved.
  explicit CovarianceMatrix(const Eigen::MatrixXd& entries,
                            Ordering ordering = Ordering::interleaved);

  int n_modes() const noexcept { return static_cast<int>(v_.rows() / 2); }
  /// Number of modes held by Alice; Bob holds the remaining last mode.
  int n_alice() const noexcept { return n_modes() - 1; }
  int dim() const noexcept { return static_cast<int>(v_.rows()); }

  const Eigen::MatrixXd& matrix() const noexcept { return v_; }
  Eigen::MatrixXd in_ordering(Ordering ordering) const;

  double operator()(int row, int col) const { return v_(row, col); }

 private:
  Eigen::MatrixXd v_;
};

/// Permutation that maps interleaved indices to block indices:
/// block[perm[i]] == interleaved[i].
std::vector<int> interleaved_to_block(int n_modes);
Eigen::MatrixXd reorder(const Eigen::MatrixXd& m, Ordering from, Ordering to);

/// Symplectic form on R^{2n}, interleaved ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Covariance matrix with every sigma(q_j, p_k) equal to zero, kept as the
/// direct sum of its position and momentum blocks.
class StandardFormCM {
 public:
  /// Both blocks must be symmetric positive definite and of equal size >= 1.
  StandardFormCM(Eigen::MatrixXd vq, Eigen::MatrixXd vp);

  const Eigen::MatrixXd& vq() const noexcept { return vq_; }
  const Eigen::MatrixXd& vp() const noexcept { return vp_; }
  int n_modes() const noexcept { return static_cast<int>(vq_.rows()); }
  int n_alice() const noexcept { return n_modes() - 1; }

  CovarianceMatrix to_covariance() const;

 private:
  Eigen::MatrixXd vq_;
  Eigen::MatrixXd vp_;
};

/// V = [[va, c], [c^T, vb]] with Bob's 2 x 2 block last.
struct Partition {
  Eigen::MatrixXd va;
  Eigen::MatrixXd vb;
  Eigen::MatrixXd c;

  Eigen::MatrixXd reassemble() const;
};

Partition partition(const CovarianceMatrix& v);

struct ValidationReport {
  bool symmetric = false;
  bool positive_definite = false;
  bool rs_ur_satisfied = false;
  double min_eigenvalue = 0.0;     ///< smallest eigenvalue of V
  double min_rs_eigenvalue = 0.0;  ///< smallest eigenvalue of V + (i/2) J

  bool bona_fide() const noexcept {
    return symmetric && positive_definite && rs_ur_satisfied;
  }
};

/// Physicality test through the Hermitian matrix V + (i/2) J, which stays
/// meaningful for singular V. Throws DimensionError / NonFiniteError.
ValidationReport validate_bona_fide(const Eigen::MatrixXd& v,
                                    double tol = kDefaultPhysicalityTol);
ValidationReport validate_bona_fide(const CovarianceMatrix& v,
                                    double tol = kDefaultPhysicalityTol);

/// Minimum eigenvalue of the Hermitian matrix v + (i/2) j.
double min_eigenvalue_with_form(const Eigen::MatrixXd& v,
                                const Eigen::MatrixXd& j);

struct SymplecticSpectrum {
  std::vector<double> values;  ///< descending

  double min() const { return values.back(); }
  double max() const { return values.front(); }
};

/// Moduli of the eigenvalues of i J V, one per mode. `v` is interleaved.
/// Throws NotPositiveDefinite, or Error if the spectrum is not real and
/// paired within 1e-9.
SymplecticSpectrum symplectic_eigenvalues(const Eigen::MatrixXd& v);
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& v);

/// Flips the sign of Bob's momentum row and column.
CovarianceMatrix partial_transpose_bob(const CovarianceMatrix& v);

/// Extracts (V^(q), V^(p)). Throws NotStandardForm if some |sigma(q_j, p_k)|
/// exceeds `tol`.
StandardFormCM split_standard(const CovarianceMatrix& v, double tol = 1e-9);

enum class Eliminate { A, B };

/// over == B: V_A - C V_B^-1 C^T (2N x 2N). over == A: V_B - C^T V_A^-1 C.
/// Throws SingularBlock when the eliminated block is not positive definite.
Eigen::MatrixXd schur_complement(const CovarianceMatrix& v, Eliminate over);

/// V = T D T^T with T = [[I, C V_B^-1], [0, I]] and D = (V/V_B) (+) V_B.
struct AitkenFactors {
  Eigen::MatrixXd t;
  Eigen::MatrixXd d;
};

AitkenFactors aitken_factorize(const CovarianceMatrix& v);

/// Purity 1 / (2^n sqrt(det V)) of the Gaussian state with this CM.
double gaussian_purity(const CovarianceMatrix& v);

// ---------------------------------------------------------------------------
// Two-mode states

/// V_A = b1 I, V_B = b2 I, C = diag(c, d).
///
/// standard_form_reduce_two_mode() keeps the party order, so b1 is always
/// Alice's and b2 Bob's local variance; it normalises c >= |d|.
struct TwoModeStandardParams {
  double b1 = 0.5;
  double b2 = 0.5;
  double c = 0.0;
  double d = 0.0;

  CovarianceMatrix to_covariance() const;
  StandardFormCM to_standard() const;
};

/// Symplectic eigenvalues of a two-mode standard-form CM and of its partial
/// transpose, from the discriminant formulas.
struct TwoModeSpectra {
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double kappa_plus_pt = 0.0;
  double kappa_minus_pt = 0.0;
  double delta = 0.0;
  double delta_pt = 0.0;
};

/// Negative discriminants within rounding are clamped to zero; anything
/// below that throws NonPhysical.
TwoModeSpectra two_mode_spectra(const TwoModeStandardParams& p);

struct TwoModeReduction {
  TwoModeStandardParams params;
  /// S_A (+) S_B; local.matrix * V * local.matrix^T is in standard form.
  Eigen::Matrix4d local;
};

/// Local symplectic reduction of a bona fide two-mode CM to standard form.
/// Throws NonPhysical for non-physical input, DimensionError if not 2 modes.
TwoModeReduction standard_form_reduce_two_mode(const CovarianceMatrix& v);

/// True iff `s` preserves `symplectic_form` up to `tol` (max-norm).
bool is_symplectic(const Eigen::MatrixXd& s, double tol = 1e-10);

}  // namespace cvw
