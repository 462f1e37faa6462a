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

#include "cvw/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "cvw/errors.hpp"

namespace cvw {
namespace {

double flag(bool b) { return b ? 1.0 : 0.0; }

std::vector<double> widen(const std::vector<double>& xs) {
  std::vector<double> out = xs;
  std::sort(out.begin(), out.end());
  const double hi = out.back();
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) mids.push_back(0.5 * (out[i] + out[i + 1]));
  mids.push_back(0.5 * out.front());
  for (std::size_t i = 1; i < out.size(); ++i) mids.push_back(hi + out[i]);
  out.insert(out.end(), mids.begin(), mids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

const char* to_string(Ternary t) noexcept {
  switch (t) {
    case Ternary::yes:
      return "yes";
    case Ternary::no:
      return "no";
    case Ternary::undecided:
      return "undecided";
  }
  return "?";
}

Ternary ternary_from_string(const std::string& s) {
  if (s == "yes") return Ternary::yes;
  if (s == "no") return Ternary::no;
  if (s == "undecided") return Ternary::undecided;
  throw ParseError("expected yes|no|undecided, got '" + s + "'");
}

CorrelationVerdict certify(const CovarianceMatrix& input, const CertifyConfig& cfg) {
  if (input.n_modes() < 2) throw DimensionError("certify: need at least two modes");
  const double tol = cfg.tol;
  CorrelationVerdict out;
  const ValidationReport rep = validate_bona_fide(input, tol);
  out.physical = rep.bona_fide();
  out.witnesses["min_rs_eigenvalue"] = rep.min_rs_eigenvalue;
  if (!out.physical) return out;

  const bool two_mode = input.n_modes() == 2;
  TwoModeStandardParams params;
  if (two_mode) params = standard_form_reduce_two_mode(input).params;
  const CovarianceMatrix v = two_mode ? params.to_covariance() : input;
  const StandardFormCM std_form = two_mode ? params.to_standard() : split_standard(input);

  auto& w = out.witnesses;
  const double kappa = symplectic_eigenvalues(v).min();
  const double kappa_pt = symplectic_eigenvalues(partial_transpose_bob(v)).min();
  w["kappa_minus"] = kappa;
  w["kappa_minus_pt"] = kappa_pt;
  out.ppt = kappa_pt >= 0.5 - tol;
  w["marginal_ppt"] = flag(std::abs(kappa_pt - 0.5) <= tol);

  bool sep_necessary = true;
  if (cfg.sigma_pm) {
    const double plus = min_sigma_pm_numeric(std_form, SignVariant::plus, cfg.optimizer).value;
    const double minus = min_sigma_pm_numeric(std_form, SignVariant::minus, cfg.optimizer).value;
    w["sigma_plus_min"] = plus;
    w["sigma_minus_min"] = minus;
    sep_necessary = plus >= 1.0 - tol && minus >= 1.0 - tol;
  } else {
    sep_necessary = kappa_pt >= 0.5 - tol;
  }
  out.separable_necessary_met = sep_necessary;

  w["sigma_ab_min"] = min_sigma_ab(std_form);
  w["sigma_ba_min"] = min_sigma_ba(std_form);

  const AbUnsteerability ab = check_ab_unsteerability(v, tol);
  w["det_ratio_ab"] = ab.det_ratio;
  w["ab_matrix_min_eig"] = ab.min_eigenvalue;
  const bool det_marginal = std::abs(ab.det_ratio - 0.25) <= tol;
  const bool matrix_marginal = std::abs(ab.min_eigenvalue) <= tol;
  const bool det_steer = ab.det_ratio < 0.25 - tol;
  const bool matrix_steer = ab.min_eigenvalue < -tol;
  if (!det_marginal && !matrix_marginal && det_steer != matrix_steer) {
    throw ConsistencyError("certify: determinant and matrix A-to-B conditions disagree");
  }
  out.steerable_a_to_b = det_steer;
  w["marginal_a_to_b"] = flag(det_marginal || matrix_marginal);

  const BaUnsteerability ba = check_ba_unsteerability(v, tol);
  w["det_ratio_ba"] = ba.det_ratio;
  w["ba_matrix_min_eig"] = ba.min_eigenvalue;
  w["schur_min_symplectic_eig"] = symplectic_eigenvalues(ba.schur).min();
  out.steerable_b_to_a = !ba.matrix_ok;
  w["marginal_b_to_a"] = flag(std::abs(ba.min_eigenvalue) <= tol);

  if (!cfg.gaussian) {
    out.gaussian_separable = Ternary::undecided;
  } else {
    out.gaussian_separable = *out.ppt ? Ternary::yes : Ternary::no;
  }
  return out;
}

OneWayExample one_way_example_search(const OneWaySearchConfig& cfg) {
  if (cfg.r_values.empty() || cfg.nbar_values.empty() || cfg.sides.empty()) {
    throw InvalidParameter("one_way_example_search: empty grid");
  }
  std::vector<double> rs = cfg.r_values;
  std::vector<double> ns = cfg.nbar_values;
  for (int round = 0; round <= cfg.widen_rounds; ++round) {
    for (double r : rs) {
      for (double nbar : ns) {
        for (Side side : cfg.sides) {
          CovarianceMatrix cm = noisy_tmsv(r, nbar, side);
          CorrelationVerdict verdict = certify(cm, cfg.certify);
          if (!verdict.physical) continue;
          if (*verdict.steerable_a_to_b != *verdict.steerable_b_to_a) {
            return OneWayExample{std::move(cm), r, nbar, side, std::move(verdict)};
          }
        }
      }
    }
    rs = widen(rs);
    ns = widen(ns);
  }
  throw NotFound("one_way_example_search: no one-way steerable state on the grid");
}

bool sign_rule_check(const TwoModeStandardParams& params) {
  if (!(std::abs(params.d) > 1e-6)) {
    throw InvalidParameter("sign_rule_check: |d| must exceed 1e-6");
  }
  const TwoModeSpectra s = two_mode_spectra(params);
  const double gap = s.kappa_minus_pt - s.kappa_minus;
  const int sg_gap = (gap > 0.0) - (gap < 0.0);
  const int sg_d = (params.d > 0.0) - (params.d < 0.0);
  return sg_gap == sg_d;
}

}  // namespace cvw
