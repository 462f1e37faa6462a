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

#include "cvw/generators.hpp"

#include <cmath>

#include "cvw/errors.hpp"
#include "cvw/rng.hpp"

namespace cvw {
namespace {

constexpr int kResampleBudget = 10000;
constexpr double kMaxCondition = 50.0;

void require_non_negative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw InvalidParameter(std::string(what) + " must be a finite non-negative number");
  }
}

std::vector<double> sample_spectrum(Rng& rng, int n) {
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (auto& x : nu) x = rng.uniform(0.5, 3.0);
  return nu;
}

}  // namespace

const char* to_string(Side s) noexcept { return s == Side::A ? "A" : "B"; }

Side side_from_string(const std::string& s) {
  if (s == "A" || s == "a") return Side::A;
  if (s == "B" || s == "b") return Side::B;
  throw InvalidParameter("noise side must be A or B, got '" + s + "'");
}

CovarianceMatrix vacuum(int n_modes) {
  if (n_modes < 1) throw InvalidParameter("vacuum: n_modes must be >= 1");
  return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix thermal(const std::vector<double>& nbar) {
  if (nbar.empty()) throw InvalidParameter("thermal: need at least one mode");
  const auto n = static_cast<Eigen::Index>(nbar.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    require_non_negative(nbar[static_cast<std::size_t>(k)], "thermal: nbar");
    m(2 * k, 2 * k) = m(2 * k + 1, 2 * k + 1) = nbar[static_cast<std::size_t>(k)] + 0.5;
  }
  return CovarianceMatrix(m);
}

CovarianceMatrix tmsv(double r) {
  require_non_negative(r, "tmsv: r");
  TwoModeStandardParams p;
  p.b1 = p.b2 = 0.5 * std::cosh(2.0 * r);
  p.c = 0.5 * std::sinh(2.0 * r);
  p.d = -p.c;
  return p.to_covariance();
}

CovarianceMatrix noisy_tmsv(double r, double nbar, Side side) {
  require_non_negative(nbar, "noisy_tmsv: nbar");
  Eigen::MatrixXd m = tmsv(r).matrix();
  const Eigen::Index off = side == Side::A ? 0 : 2;
  m.block(off, off, 2, 2) += nbar * Eigen::Matrix2d::Identity();
  return CovarianceMatrix(m);
}

std::vector<double> random_standard_spectrum(int n_modes, std::uint64_t seed) {
  if (n_modes < 2) throw InvalidParameter("random_standard: n_modes must be >= 2");
  Rng rng(seed);
  return sample_spectrum(rng, n_modes);
}

CovarianceMatrix random_standard(int n_modes, int n_alice, std::uint64_t seed) {
  if (n_modes < 2) throw InvalidParameter("random_standard: n_modes must be >= 2");
  if (n_alice != n_modes - 1) {
    throw InvalidParameter("random_standard: Bob holds exactly one mode, so n_alice = n - 1");
  }
  Rng rng(seed);
  const std::vector<double> nu = sample_spectrum(rng, n_modes);
  Eigen::VectorXd d(n_modes);
  for (int k = 0; k < n_modes; ++k) d(k) = nu[static_cast<std::size_t>(k)];

  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    Eigen::MatrixXd sq(n_modes, n_modes);
    for (int i = 0; i < n_modes; ++i) {
      for (int j = 0; j < n_modes; ++j) sq(i, j) = rng.normal();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sq);
    const Eigen::VectorXd s = svd.singularValues();
    if (!(s(n_modes - 1) > 0.0) || s(0) / s(n_modes - 1) >= kMaxCondition) continue;

    const Eigen::MatrixXd sp = sq.inverse().transpose();
    Eigen::MatrixXd vq = sq * d.asDiagonal() * sq.transpose();
    Eigen::MatrixXd vp = sp * d.asDiagonal() * sp.transpose();
    vq = 0.5 * (vq + vq.transpose()).eval();
    vp = 0.5 * (vp + vp.transpose()).eval();
    return StandardFormCM(vq, vp).to_covariance();
  }
  throw Error("random_standard: resampling budget exhausted");
}

const char* to_string(GeneratorSpec::Kind k) noexcept {
  switch (k) {
    case GeneratorSpec::Kind::vacuum:
      return "vacuum";
    case GeneratorSpec::Kind::thermal:
      return "thermal";
    case GeneratorSpec::Kind::tmsv:
      return "tmsv";
    case GeneratorSpec::Kind::noisy_tmsv:
      return "noisy_tmsv";
    case GeneratorSpec::Kind::random_standard:
      return "random_standard";
  }
  return "?";
}

GeneratorSpec::Kind generator_kind_from_string(const std::string& s) {
  for (auto k : {GeneratorSpec::Kind::vacuum, GeneratorSpec::Kind::thermal,
                 GeneratorSpec::Kind::tmsv, GeneratorSpec::Kind::noisy_tmsv,
                 GeneratorSpec::Kind::random_standard}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidParameter("unknown generator '" + s + "'");
}

CovarianceMatrix generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::vacuum:
      return vacuum(spec.n_modes);
    case GeneratorSpec::Kind::thermal: {
      std::vector<double> nbar = spec.nbar;
      if (nbar.size() == 1 && spec.n_modes > 1) {
        nbar.assign(static_cast<std::size_t>(spec.n_modes), spec.nbar.front());
      }
      if (static_cast<int>(nbar.size()) != spec.n_modes) {
        throw InvalidParameter("thermal: need one nbar per mode");
      }
      return thermal(nbar);
    }
    case GeneratorSpec::Kind::tmsv:
      if (spec.n_modes != 2) throw InvalidParameter("tmsv is a two-mode state");
      return tmsv(spec.r);
    case GeneratorSpec::Kind::noisy_tmsv:
      if (spec.n_modes != 2) throw InvalidParameter("noisy_tmsv is a two-mode state");
      return noisy_tmsv(spec.r, spec.nbar.empty() ? 0.0 : spec.nbar.front(), spec.noise_side);
    case GeneratorSpec::Kind::random_standard:
      return random_standard(spec.n_modes, spec.n_modes - 1, spec.seed);
  }
  throw InvalidParameter("unknown generator kind");
}

}  // namespace cvw
