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

#include "cvw/observables.hpp"

#include <cmath>
#include <string>

#include "cvw/errors.hpp"

namespace cvw {
namespace {

void require_length(const StandardFormCM& v, const Eigen::VectorXd& alpha,
                    const Eigen::VectorXd& beta) {
  if (alpha.size() != v.n_modes() || beta.size() != v.n_modes()) {
    throw DimensionError("weight vectors must have length N + 1 = " +
                         std::to_string(v.n_modes()));
  }
}

Eigen::MatrixXd flip_last_coupling(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  const auto last = m.rows() - 1;
  out.row(last) *= -1.0;
  out.col(last) *= -1.0;
  return out;  // the diagonal entry is negated twice
}

// Diagonal of the selector W in D(alpha, beta) = alpha^T W beta.
Eigen::VectorXd denominator_weights(Functional f, Eigen::Index n) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  if (f == Functional::sigma_ab) {
    w.setZero();
    w(n - 1) = 1.0;
  } else if (f == Functional::sigma_ba) {
    w(n - 1) = 0.0;
  }
  return w;
}

}  // namespace

ParamVector::ParamVector(Eigen::VectorXd alpha, Eigen::VectorXd beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() != beta_.size() || alpha_.size() < 2) {
    throw InvalidParameter("ParamVector: alpha and beta need equal length >= 2");
  }
  if (!alpha_.allFinite() || !beta_.allFinite() ||
      alpha_.minCoeff() < kMinComponent || beta_.minCoeff() < kMinComponent) {
    throw InvalidParameter("ParamVector: every component must be positive");
  }
}

ParamVector ParamVector::ones(int n_modes) {
  return ParamVector(Eigen::VectorXd::Ones(n_modes), Eigen::VectorXd::Ones(n_modes));
}

SignVariant sign_of(Functional f) noexcept {
  return f == Functional::sigma_minus ? SignVariant::minus : SignVariant::plus;
}

const char* to_string(Functional f) noexcept {
  switch (f) {
    case Functional::sigma_plus:
      return "sigma_plus";
    case Functional::sigma_minus:
      return "sigma_minus";
    case Functional::sigma_ab:
      return "sigma_ab";
    case Functional::sigma_ba:
      return "sigma_ba";
  }
  return "?";
}

Functional functional_from_string(const std::string& name) {
  for (auto f : {Functional::sigma_plus, Functional::sigma_minus, Functional::sigma_ab,
                 Functional::sigma_ba}) {
    if (name == to_string(f)) return f;
  }
  throw InvalidParameter("unknown functional '" + name + "'");
}

Eigen::MatrixXd q_form(const Eigen::MatrixXd& vq) { return flip_last_coupling(vq); }

Eigen::MatrixXd p_form(const Eigen::MatrixXd& vp, SignVariant s) {
  return s == SignVariant::plus ? vp : flip_last_coupling(vp);
}

double variance_q(const Eigen::MatrixXd& vq, const Eigen::VectorXd& alpha) {
  if (alpha.size() != vq.rows()) throw DimensionError("variance_q: length mismatch");
  return alpha.dot(q_form(vq) * alpha);
}

double variance_p(const Eigen::MatrixXd& vp, const Eigen::VectorXd& beta,
                  SignVariant s) {
  if (beta.size() != vp.rows()) throw DimensionError("variance_p: length mismatch");
  return beta.dot(p_form(vp, s) * beta);
}

double commutator_bound(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                        SignVariant s) {
  if (alpha.size() != beta.size() || alpha.size() < 2) {
    throw DimensionError("commutator_bound: length mismatch");
  }
  const auto n = alpha.size() - 1;
  const double alice = alpha.head(n).dot(beta.head(n));
  const double bob = alpha(n) * beta(n);
  return std::abs(s == SignVariant::plus ? alice - bob : alice + bob);
}

UrCheck sum_ur_check(const StandardFormCM& v, const ParamVector& p, SignVariant s) {
  require_length(v, p.alpha(), p.beta());
  UrCheck out;
  out.lhs = variance_q(v.vq(), p.alpha()) + variance_p(v.vp(), p.beta(), s);
  out.rhs = commutator_bound(p.alpha(), p.beta(), s);
  out.satisfied = out.lhs >= out.rhs - 1e-12;
  return out;
}

ReidResult reid_product(const StandardFormCM& v, double lambda, double mu) {
  if (v.n_modes() != 2) throw DimensionError("reid_product: expected two modes");
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    throw InvalidParameter("reid_product: lambda and mu must be positive");
  }
  const Eigen::Vector2d alpha(1.0, lambda);
  const Eigen::Vector2d beta(1.0, mu);
  ReidResult out;
  out.product = std::sqrt(variance_q(v.vq(), alpha)) *
                std::sqrt(variance_p(v.vp(), beta, SignVariant::plus));
  out.bound = 0.5 * std::abs(1.0 - lambda * mu);
  out.paradox = out.product < 0.5 - 1e-12;
  return out;
}

double denominator(Functional f, const Eigen::VectorXd& alpha,
                   const Eigen::VectorXd& beta) {
  return alpha.dot(denominator_weights(f, alpha.size()).cwiseProduct(beta));
}

double evaluate(const StandardFormCM& v, Functional f, const Eigen::VectorXd& alpha,
                const Eigen::VectorXd& beta) {
  require_length(v, alpha, beta);
  const double num = variance_q(v.vq(), alpha) + variance_p(v.vp(), beta, sign_of(f));
  return num / denominator(f, alpha, beta);
}

double sigma_pm(const StandardFormCM& v, const ParamVector& p, SignVariant s) {
  return evaluate(v, s == SignVariant::plus ? Functional::sigma_plus : Functional::sigma_minus,
                  p.alpha(), p.beta());
}

double sigma_ab(const StandardFormCM& v, const ParamVector& p) {
  return evaluate(v, Functional::sigma_ab, p.alpha(), p.beta());
}

double sigma_ba(const StandardFormCM& v, const ParamVector& p) {
  return evaluate(v, Functional::sigma_ba, p.alpha(), p.beta());
}

Gradient gradient(const StandardFormCM& v, Functional f, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXd& beta) {
  require_length(v, alpha, beta);
  const Eigen::MatrixXd a = q_form(v.vq());
  const Eigen::MatrixXd b = p_form(v.vp(), sign_of(f));
  const Eigen::VectorXd w = denominator_weights(f, alpha.size());
  const double den = alpha.dot(w.cwiseProduct(beta));
  const double num = alpha.dot(a * alpha) + beta.dot(b * beta);

  Gradient g;
  g.d_alpha = (2.0 * den * (a * alpha) - num * w.cwiseProduct(beta)) / (den * den);
  g.d_beta = (2.0 * den * (b * beta) - num * w.cwiseProduct(alpha)) / (den * den);
  return g;
}

EulerResidual euler_residual(const StandardFormCM& v, const ParamVector& p,
                             SignVariant s) {
  const Functional f = s == SignVariant::plus ? Functional::sigma_plus : Functional::sigma_minus;
  const Gradient g = gradient(v, f, p.alpha(), p.beta());
  EulerResidual r;
  r.lhs_alpha = p.alpha().dot(g.d_alpha);
  r.lhs_beta = -p.beta().dot(g.d_beta);
  r.rhs = (variance_q(v.vq(), p.alpha()) - variance_p(v.vp(), p.beta(), s)) /
          denominator(f, p.alpha(), p.beta());
  return r;
}

}  // namespace cvw
