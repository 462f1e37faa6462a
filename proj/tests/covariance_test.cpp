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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cvw/covariance.hpp"
#include "cvw/errors.hpp"
#include "cvw/generators.hpp"
#include "test_util.hpp"

namespace cvw {
namespace {

using testing::oracle_symplectic;
using testing::rel_diff;
using testing::rotate_locally;

TEST(CovarianceMatrix, RejectsMalformedInput) {
  EXPECT_THROW(CovarianceMatrix(Eigen::MatrixXd::Identity(3, 3)), DimensionError);
  EXPECT_THROW(CovarianceMatrix(Eigen::MatrixXd::Identity(2, 4)), DimensionError);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(CovarianceMatrix{m}, NonFiniteError);
  m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(CovarianceMatrix{m}, NotSymmetricError);
}

TEST(CovarianceMatrix, OrderingRoundTrip) {
  const auto perm = interleaved_to_block(2);
  EXPECT_EQ(perm, (std::vector<int>{0, 2, 1, 3}));

  const CovarianceMatrix v = random_standard(3, 2, 11);
  const Eigen::MatrixXd block = v.in_ordering(Ordering::block);
  // (q1, p1) covariance lives at (0, 3) in block ordering for three modes.
  EXPECT_DOUBLE_EQ(block(0, 3), v(0, 1));
  EXPECT_DOUBLE_EQ(block(1, 2), v(2, 4));
  const CovarianceMatrix back(block, Ordering::block);
  EXPECT_EQ(back.matrix(), v.matrix());
}

TEST(CovarianceMatrix, SymplecticForm) {
  const Eigen::MatrixXd j = symplectic_form(2);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(0, 1) = expected(2, 3) = 1.0;
  expected(1, 0) = expected(3, 2) = -1.0;
  EXPECT_EQ(j, expected);
  EXPECT_TRUE((j * j + Eigen::MatrixXd::Identity(4, 4)).isZero());
}

TEST(Validation, VacuumSaturates) {
  const ValidationReport r = validate_bona_fide(vacuum(2));
  EXPECT_TRUE(r.bona_fide());
  EXPECT_NEAR(r.min_rs_eigenvalue, 0.0, 1e-15);
  EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-15);
}

TEST(Validation, QuarterIdentityIsNotPhysical) {
  const ValidationReport r = validate_bona_fide(CovarianceMatrix(0.25 * Eigen::MatrixXd::Identity(4, 4)));
  EXPECT_TRUE(r.symmetric);
  EXPECT_TRUE(r.positive_definite);
  EXPECT_FALSE(r.rs_ur_satisfied);
  EXPECT_NEAR(r.min_rs_eigenvalue, -0.25, 1e-14);
}

TEST(Validation, ToleranceIsAbsolute) {
  Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  m(0, 0) -= 5e-10;
  EXPECT_TRUE(validate_bona_fide(m).bona_fide());
  EXPECT_FALSE(validate_bona_fide(m, 1e-12).bona_fide());
}

TEST(SymplecticSpectrum, VacuumAndThermal) {
  const auto vac = symplectic_eigenvalues(vacuum(3));
  ASSERT_EQ(vac.values.size(), 3u);
  for (double nu : vac.values) EXPECT_NEAR(nu, 0.5, 1e-12);

  const auto th = symplectic_eigenvalues(thermal({0.2, 1.5}));
  EXPECT_NEAR(th.max(), 2.0, 1e-12);
  EXPECT_NEAR(th.min(), 0.7, 1e-12);
}

TEST(SymplecticSpectrum, MatchesRealEigenOracle) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CovarianceMatrix v = random_standard(n, n - 1, seed);
      const auto got = symplectic_eigenvalues(v).values;
      const auto want = oracle_symplectic(v.matrix());
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
    }
  }
}

TEST(SymplecticSpectrum, RejectsIndefinite) {
  Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  m(1, 1) = -0.5;
  EXPECT_THROW(symplectic_eigenvalues(m), NotPositiveDefinite);
}

TEST(PartialTranspose, FlipsBobMomentumOnly) {
  const CovarianceMatrix v = random_standard(3, 2, 5);
  const CovarianceMatrix pt = partial_transpose_bob(v);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double sign = ((i == 5) != (j == 5)) ? -1.0 : 1.0;
      EXPECT_EQ(pt(i, j), sign * v(i, j));
    }
  }
  EXPECT_EQ(partial_transpose_bob(pt).matrix(), v.matrix());
}

TEST(SplitStandard, ExtractsBlocksAndReportsWorstEntry) {
  const CovarianceMatrix v = random_standard(3, 2, 2);
  const StandardFormCM s = split_standard(v);
  const Eigen::MatrixXd block = v.in_ordering(Ordering::block);
  EXPECT_EQ(s.vq(), block.topLeftCorner(3, 3));
  EXPECT_EQ(s.vp(), block.bottomRightCorner(3, 3));
  EXPECT_LT(rel_diff(v.matrix().determinant(), s.vq().determinant() * s.vp().determinant()),
            1e-12);

  const CovarianceMatrix rotated = rotate_locally(tmsv(0.5), 0.3, 0.0);
  try {
    split_standard(rotated);
    FAIL() << "expected NotStandardForm";
  } catch (const NotStandardForm& e) {
    EXPECT_GT(e.value(), 1e-3);
    EXPECT_NE(e.row() % 2, e.col() % 2);
  }
}

TEST(StandardFormCM, RejectsBadBlocks) {
  EXPECT_THROW(StandardFormCM(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)),
               DimensionError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = -1.0;
  EXPECT_THROW(StandardFormCM(Eigen::MatrixXd::Identity(2, 2), bad), NotPositiveDefinite);
}

TEST(Schur, DeterminantFormulaBothWays) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CovarianceMatrix v = random_standard(n, n - 1, 100 + seed);
      const Partition p = partition(v);
      const double det_v = testing::det(v.matrix());
      const Eigen::MatrixXd sb = schur_complement(v, Eliminate::B);
      const Eigen::MatrixXd sa = schur_complement(v, Eliminate::A);
      EXPECT_EQ(sb.rows(), 2 * (n - 1));
      EXPECT_EQ(sa.rows(), 2);
      EXPECT_LT(rel_diff(det_v, testing::det(p.vb) * testing::det(sb)), 1e-12);
      EXPECT_LT(rel_diff(det_v, testing::det(p.va) * testing::det(sa)), 1e-12);
      EXPECT_EQ(p.reassemble(), v.matrix());
    }
  }
}

TEST(Schur, SingularBlockIsAnError) {
  Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  m(2, 2) = m(3, 3) = 0.0;
  EXPECT_THROW(schur_complement(CovarianceMatrix(m), Eliminate::B), SingularBlock);
  m = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  m(0, 0) = 0.0;
  EXPECT_THROW(schur_complement(CovarianceMatrix(m), Eliminate::A), SingularBlock);
  EXPECT_THROW(partition(vacuum(1)), DimensionError);
}

TEST(Aitken, ReconstructsAndIsUnimodular) {
  const CovarianceMatrix tm = tmsv(0.5);
  const AitkenFactors f0 = aitken_factorize(tm);
  EXPECT_LT((f0.t * f0.d * f0.t.transpose() - tm.matrix()).cwiseAbs().maxCoeff(), 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CovarianceMatrix v = random_standard(3, 2, seed);
    const AitkenFactors f = aitken_factorize(v);
    const double scale = v.matrix().cwiseAbs().maxCoeff();
    EXPECT_LT((f.t * f.d * f.t.transpose() - v.matrix()).cwiseAbs().maxCoeff(), 1e-12 * scale);
    EXPECT_DOUBLE_EQ(f.t.determinant(), 1.0);
    EXPECT_TRUE(f.d.topRightCorner(4, 2).isZero());
  }
}

TEST(Purity, ReferenceStates) {
  EXPECT_NEAR(gaussian_purity(vacuum(3)), 1.0, 1e-12);
  EXPECT_NEAR(gaussian_purity(CovarianceMatrix(Eigen::MatrixXd::Identity(2, 2))), 0.5, 1e-15);
  EXPECT_NEAR(gaussian_purity(thermal({0.5})), 0.5, 1e-15);
  for (double r : {0.0, 0.4, 1.3}) EXPECT_NEAR(gaussian_purity(tmsv(r)), 1.0, 1e-9);
  EXPECT_THROW(gaussian_purity(CovarianceMatrix(Eigen::MatrixXd::Zero(2, 2))), NotPositiveDefinite);
}

TEST(Williamson, DeterminantBound) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const CovarianceMatrix v = random_standard(n, n - 1, seed);
      EXPECT_GE(v.matrix().determinant(), std::ldexp(1.0, -2 * n) - 1e-12);
      EXPECT_GE(symplectic_eigenvalues(v).min(), 0.5 - 1e-10);
    }
  }
}

// ---------------------------------------------------------------------------

TEST(TwoModeSpectra, TmsvClosedForm) {
  for (double r = 0.0; r <= 2.0 + 1e-12; r += 0.1) {
    const auto red = standard_form_reduce_two_mode(tmsv(r));
    const TwoModeSpectra s = two_mode_spectra(red.params);
    EXPECT_NEAR(s.kappa_minus, 0.5, 1e-10) << r;
    EXPECT_NEAR(s.kappa_plus, 0.5, 1e-9) << r;
    EXPECT_NEAR(s.kappa_minus_pt, 0.5 * std::exp(-2.0 * r), 1e-10) << r;
    EXPECT_NEAR(s.kappa_plus_pt, 0.5 * std::exp(2.0 * r), 1e-9 * std::exp(2.0 * r)) << r;
  }
}

TEST(TwoModeSpectra, MatchesGeneralSolver) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const TwoModeStandardParams p = testing::random_two_mode_params(rng, false);
    const TwoModeSpectra s = two_mode_spectra(p);
    const CovarianceMatrix v = p.to_covariance();
    const auto want = oracle_symplectic(v.matrix());
    const auto want_pt = oracle_symplectic(partial_transpose_bob(v).matrix());
    EXPECT_NEAR(s.kappa_plus, want[0], 1e-10);
    EXPECT_NEAR(s.kappa_minus, want[1], 1e-10);
    EXPECT_NEAR(s.kappa_plus_pt, want_pt[0], 1e-10);
    EXPECT_NEAR(s.kappa_minus_pt, want_pt[1], 1e-10);
  }
}

TEST(TwoModeSpectra, RejectsNonPositive) {
  TwoModeStandardParams p{0.5, 0.5, 0.6, 0.0};
  EXPECT_THROW(two_mode_spectra(p), NonPhysical);
}

TEST(TwoModeReduction, StandardTmsvIsFixed) {
  const auto red = standard_form_reduce_two_mode(tmsv(0.5));
  EXPECT_NEAR(red.params.b1, 0.5 * std::cosh(1.0), 1e-12);
  EXPECT_NEAR(red.params.b2, 0.5 * std::cosh(1.0), 1e-12);
  EXPECT_NEAR(red.params.c, 0.5 * std::sinh(1.0), 1e-12);
  EXPECT_NEAR(red.params.d, -0.5 * std::sinh(1.0), 1e-12);
  EXPECT_TRUE(is_symplectic(red.local));
  // Only local rotations are allowed.
  const Eigen::Matrix2d ra = red.local.block<2, 2>(0, 0);
  EXPECT_LT((ra * ra.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TwoModeReduction, RecoversRotatedTmsv) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const double r = rng.uniform(0.0, 1.5);
    const CovarianceMatrix v = rotate_locally(tmsv(r), rng.uniform(0, 6.3), rng.uniform(0, 6.3));
    const auto red = standard_form_reduce_two_mode(v);
    EXPECT_NEAR(red.params.b1, 0.5 * std::cosh(2 * r), 1e-9);
    EXPECT_NEAR(red.params.b2, 0.5 * std::cosh(2 * r), 1e-9);
    EXPECT_NEAR(red.params.c, 0.5 * std::sinh(2 * r), 1e-9);
    EXPECT_NEAR(red.params.d, -0.5 * std::sinh(2 * r), 1e-9);
  }
}

TEST(TwoModeReduction, ProducesStandardFormAndKeepsSpectrum) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const CovarianceMatrix v = random_standard(2, 1, seed);
    const auto red = standard_form_reduce_two_mode(v);
    ASSERT_TRUE(is_symplectic(red.local, 1e-9));
    const Eigen::Matrix4d out = red.local * v.matrix() * red.local.transpose();
    const Eigen::Matrix4d want = red.params.to_covariance().matrix();
    EXPECT_LT((out - want).cwiseAbs().maxCoeff(), 1e-9 * v.matrix().cwiseAbs().maxCoeff());
    EXPECT_GE(red.params.c, std::abs(red.params.d) - 1e-12);

    const auto before = oracle_symplectic(v.matrix());
    const TwoModeSpectra s = two_mode_spectra(red.params);
    EXPECT_NEAR(s.kappa_plus, before[0], 1e-9);
    EXPECT_NEAR(s.kappa_minus, before[1], 1e-9);
  }
}

TEST(TwoModeReduction, InvariantUnderLocalRotations) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CovarianceMatrix v = random_standard(2, 1, seed);
    const auto a = standard_form_reduce_two_mode(v).params;
    const auto b =
        standard_form_reduce_two_mode(rotate_locally(v, rng.uniform(0, 6.3), rng.uniform(0, 6.3)))
            .params;
    EXPECT_NEAR(a.b1, b.b1, 1e-9);
    EXPECT_NEAR(a.b2, b.b2, 1e-9);
    EXPECT_NEAR(a.c, b.c, 1e-9);
    EXPECT_NEAR(a.d, b.d, 1e-9);
  }
}

TEST(TwoModeReduction, Errors) {
  EXPECT_THROW(standard_form_reduce_two_mode(vacuum(3)), DimensionError);
  EXPECT_THROW(
      standard_form_reduce_two_mode(CovarianceMatrix(0.25 * Eigen::MatrixXd::Identity(4, 4))),
      NonPhysical);
}

TEST(Symplectic, Detection) {
  EXPECT_TRUE(is_symplectic(Eigen::MatrixXd::Identity(4, 4)));
  Eigen::MatrixXd squeeze = Eigen::MatrixXd::Identity(2, 2);
  squeeze(0, 0) = 2.0;
  squeeze(1, 1) = 0.5;
  EXPECT_TRUE(is_symplectic(squeeze));
  squeeze(1, 1) = 0.6;
  EXPECT_FALSE(is_symplectic(squeeze));
}

}  // namespace
}  // namespace cvw
