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

#include "cvw/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "cvw/errors.hpp"

namespace cvw {
namespace {

void require_even_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0) {
    throw DimensionError(std::string(what) + ": expected a 2n x 2n matrix, got " +
                         std::to_string(m.rows()) + " x " +
                         std::to_string(m.cols()));
  }
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw NonFiniteError(std::string(what) + ": non-finite entry");
  }
}

bool is_symmetric(const Eigen::MatrixXd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

void require_bipartite(int n_modes) {
  if (n_modes < 2) {
    throw DimensionError("bipartite operation needs at least two modes");
  }
}

}  // namespace

std::vector<int> interleaved_to_block(int n_modes) {
  std::vector<int> perm(2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    perm[2 * k] = k;
    perm[2 * k + 1] = n_modes + k;
  }
  return perm;
}

Eigen::MatrixXd reorder(const Eigen::MatrixXd& m, Ordering from, Ordering to) {
  if (from == to) return m;
  const int n = static_cast<int>(m.rows() / 2);
  const auto perm = interleaved_to_block(n);
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      if (from == Ordering::interleaved) {
        out(perm[i], perm[j]) = m(i, j);
      } else {
        out(i, j) = m(perm[i], perm[j]);
      }
    }
  }
  return out;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

// ---------------------------------------------------------------------------

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXd& entries,
                                   Ordering ordering) {
  require_even_square(entries, "CovarianceMatrix");
  require_finite(entries, "CovarianceMatrix");
  if (!is_symmetric(entries)) {
    throw NotSymmetricError("CovarianceMatrix: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (entries + entries.transpose());
  v_ = reorder(sym, ordering, Ordering::interleaved);
}

Eigen::MatrixXd CovarianceMatrix::in_ordering(Ordering ordering) const {
  return reorder(v_, Ordering::interleaved, ordering);
}

StandardFormCM::StandardFormCM(Eigen::MatrixXd vq, Eigen::MatrixXd vp)
    : vq_(std::move(vq)), vp_(std::move(vp)) {
  if (vq_.rows() != vq_.cols() || vp_.rows() != vp_.cols() ||
      vq_.rows() != vp_.rows() || vq_.rows() < 1) {
    throw DimensionError("StandardFormCM: blocks must be square and of equal size");
  }
  require_finite(vq_, "StandardFormCM");
  require_finite(vp_, "StandardFormCM");
  if (!is_symmetric(vq_) || !is_symmetric(vp_)) {
    throw NotSymmetricError("StandardFormCM: blocks must be symmetric");
  }
  vq_ = 0.5 * (vq_ + vq_.transpose()).eval();
  vp_ = 0.5 * (vp_ + vp_.transpose()).eval();
  if (vq_.llt().info() != Eigen::Success || vp_.llt().info() != Eigen::Success) {
    throw NotPositiveDefinite("StandardFormCM: blocks must be positive definite");
  }
}

CovarianceMatrix StandardFormCM::to_covariance() const {
  const auto n = vq_.rows();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = vq_;
  block.bottomRightCorner(n, n) = vp_;
  return CovarianceMatrix(block, Ordering::block);
}

Eigen::MatrixXd Partition::reassemble() const {
  const auto na = va.rows();
  Eigen::MatrixXd v(na + 2, na + 2);
  v.topLeftCorner(na, na) = va;
  v.topRightCorner(na, 2) = c;
  v.bottomLeftCorner(2, na) = c.transpose();
  v.bottomRightCorner(2, 2) = vb;
  return v;
}

Partition partition(const CovarianceMatrix& v) {
  require_bipartite(v.n_modes());
  const int na = 2 * v.n_alice();
  const auto& m = v.matrix();
  return Partition{m.topLeftCorner(na, na), m.bottomRightCorner(2, 2),
                   m.topRightCorner(na, 2)};
}

// ---------------------------------------------------------------------------

double min_eigenvalue_with_form(const Eigen::MatrixXd& v,
                                const Eigen::MatrixXd& j) {
  using std::complex_literals::operator""i;
  const Eigen::MatrixXcd h =
      v.cast<std::complex<double>>() + (0.5i) * j.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

ValidationReport validate_bona_fide(const Eigen::MatrixXd& v, double tol) {
  require_even_square(v, "validate_bona_fide");
  require_finite(v, "validate_bona_fide");

  ValidationReport report;
  report.symmetric = is_symmetric(v);
  const Eigen::MatrixXd sym = 0.5 * (v + v.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.positive_definite = report.min_eigenvalue > tol;

  report.min_rs_eigenvalue =
      min_eigenvalue_with_form(sym, symplectic_form(static_cast<int>(v.rows() / 2)));
  report.rs_ur_satisfied = report.min_rs_eigenvalue >= -tol;
  return report;
}

ValidationReport validate_bona_fide(const CovarianceMatrix& v, double tol) {
  return validate_bona_fide(v.matrix(), tol);
}

SymplecticSpectrum symplectic_eigenvalues(const Eigen::MatrixXd& v) {
  require_even_square(v, "symplectic_eigenvalues");
  require_finite(v, "symplectic_eigenvalues");
  if (v.llt().info() != Eigen::Success) {
    throw NotPositiveDefinite("symplectic_eigenvalues: matrix is not positive definite");
  }
  using std::complex_literals::operator""i;
  const int n = static_cast<int>(v.rows() / 2);
  const Eigen::MatrixXcd ijv =
      1.0i * (symplectic_form(n) * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ijv, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error("symplectic_eigenvalues: eigen decomposition failed");
  }

  std::vector<double> re(2 * n);
  double scale = 1.0;
  for (int k = 0; k < 2 * n; ++k) scale = std::max(scale, std::abs(es.eigenvalues()[k]));
  for (int k = 0; k < 2 * n; ++k) {
    const auto lambda = es.eigenvalues()[k];
    if (std::abs(lambda.imag()) > 1e-9 * scale) {
      throw Error("symplectic_eigenvalues: i J V has a non-real eigenvalue");
    }
    re[k] = lambda.real();
  }
  std::sort(re.begin(), re.end());

  // Eigenvalues of i J V come in pairs +nu, -nu.
  SymplecticSpectrum spectrum;
  spectrum.values.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double hi = re[2 * n - 1 - k];
    const double lo = re[k];
    if (std::abs(hi + lo) > 1e-9 * scale) {
      throw Error("symplectic_eigenvalues: spectrum of i J V is not paired");
    }
    spectrum.values.push_back(0.5 * (hi - lo));
  }
  return spectrum;
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& v) {
  return symplectic_eigenvalues(v.matrix());
}

CovarianceMatrix partial_transpose_bob(const CovarianceMatrix& v) {
  require_bipartite(v.n_modes());
  Eigen::MatrixXd m = v.matrix();
  const int last = v.dim() - 1;
  m.row(last) *= -1.0;
  m.col(last) *= -1.0;
  return CovarianceMatrix(m);
}

StandardFormCM split_standard(const CovarianceMatrix& v, double tol) {
  const int n = v.n_modes();
  const auto& m = v.matrix();
  double worst = 0.0;
  int wr = 0;
  int wc = 1;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double x = std::abs(m(2 * j, 2 * k + 1));
      if (x > worst) {
        worst = x;
        wr = 2 * j;
        wc = 2 * k + 1;
      }
    }
  }
  if (worst > tol) {
    throw NotStandardForm(worst, static_cast<std::size_t>(wr),
                          static_cast<std::size_t>(wc));
  }
  Eigen::MatrixXd vq(n, n);
  Eigen::MatrixXd vp(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      vq(j, k) = m(2 * j, 2 * k);
      vp(j, k) = m(2 * j + 1, 2 * k + 1);
    }
  }
  return StandardFormCM(std::move(vq), std::move(vp));
}

Eigen::MatrixXd schur_complement(const CovarianceMatrix& v, Eliminate over) {
  const Partition p = partition(v);
  if (over == Eliminate::B) {
    Eigen::LLT<Eigen::MatrixXd> llt(p.vb);
    if (llt.info() != Eigen::Success) {
      throw SingularBlock("schur_complement: V_B is not positive definite");
    }
    return p.va - p.c * llt.solve(p.c.transpose());
  }
  Eigen::LLT<Eigen::MatrixXd> llt(p.va);
  if (llt.info() != Eigen::Success) {
    throw SingularBlock("schur_complement: V_A is not positive definite");
  }
  return p.vb - p.c.transpose() * llt.solve(p.c);
}

AitkenFactors aitken_factorize(const CovarianceMatrix& v) {
  const Partition p = partition(v);
  Eigen::LLT<Eigen::MatrixXd> llt(p.vb);
  if (llt.info() != Eigen::Success) {
    throw SingularBlock("aitken_factorize: V_B is not positive definite");
  }
  const auto na = p.va.rows();
  const Eigen::MatrixXd c_vb_inv = llt.solve(p.c.transpose()).transpose();

  AitkenFactors f;
  f.t = Eigen::MatrixXd::Identity(na + 2, na + 2);
  f.t.topRightCorner(na, 2) = c_vb_inv;
  f.d = Eigen::MatrixXd::Zero(na + 2, na + 2);
  f.d.topLeftCorner(na, na) = p.va - c_vb_inv * p.c.transpose();
  f.d.bottomRightCorner(2, 2) = p.vb;
  return f;
}

double gaussian_purity(const CovarianceMatrix& v) {
  Eigen::LLT<Eigen::MatrixXd> llt(v.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("gaussian_purity: non-positive determinant");
  }
  const double log_det =
      2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return std::exp(-v.n_modes() * std::numbers::ln2 - 0.5 * log_det);
}

bool is_symplectic(const Eigen::MatrixXd& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const Eigen::MatrixXd j = symplectic_form(static_cast<int>(s.rows() / 2));
  return (s * j * s.transpose() - j).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace cvw
