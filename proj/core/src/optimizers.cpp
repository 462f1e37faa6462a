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

#include "cvw/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvw/errors.hpp"
#include "cvw/rng.hpp"

namespace cvw {
namespace {

double log_det_pd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw SingularBlock(std::string(what) + " is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

void require_bipartite(const StandardFormCM& v, const char* who) {
  if (v.n_modes() < 2) {
    throw DimensionError(std::string(who) + ": need at least one mode per party");
  }
}

double quotient(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return (x.dot(a * x) + y.dot(b * y)) / x.dot(y);
}

// min u^T A u subject to w^T u = 1, u >= 0. A is positive definite, w >= 0
// with some positive entry. Primal active-set method from the feasible point
// u = 1 / sum(w).
Eigen::VectorXd qp_on_slice(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / w.sum());
  std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  const double scale = a.cwiseAbs().maxCoeff();

  for (int iter = 0; iter < 20 * static_cast<int>(n) + 50; ++iter) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!fixed[static_cast<std::size_t>(i)]) free.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    const Eigen::VectorXd grad = 2.0 * (a * u);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) kkt(r, c) = 2.0 * a(free[r], free[c]);
      kkt(r, m) = -w(free[r]);
      kkt(m, r) = w(free[r]);
      rhs(r) = -grad(free[r]);
    }
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    const double lambda = sol(m);

    double step_norm = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) step_norm = std::max(step_norm, std::abs(sol(r)));

    if (step_norm <= 1e-15 * (1.0 + u.cwiseAbs().maxCoeff())) {
      Eigen::Index release = -1;
      double worst = -1e-14 * std::max(1.0, scale) * (1.0 + u.cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!fixed[static_cast<std::size_t>(i)]) continue;
        const double mu = grad(i) - lambda * w(i);
        if (mu < worst) {
          worst = mu;
          release = i;
        }
      }
      if (release < 0) break;
      fixed[static_cast<std::size_t>(release)] = false;
      continue;
    }

    double step = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index r = 0; r < m; ++r) {
      const double p = sol(r);
      if (p < 0.0) {
        const double t = -u(free[r]) / p;
        if (t < step) {
          step = t;
          blocking = free[r];
        }
      }
    }
    for (Eigen::Index r = 0; r < m; ++r) u(free[r]) += step * sol(r);
    if (blocking >= 0) {
      u(blocking) = 0.0;
      fixed[static_cast<std::size_t>(blocking)] = true;
    }
  }
  return u.cwiseMax(0.0);
}

struct Candidate {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

// Stationary point on the face {alpha_F > 0, beta_G > 0}: the generalised
// eigenproblem (E^T A_FF^-1 E) y = mu B_GG y, value 2 / sqrt(mu_max).
bool polish(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Candidate& c) {
  std::vector<Eigen::Index> f;
  std::vector<Eigen::Index> g;
  for (Eigen::Index i = 0; i < c.alpha.size(); ++i) {
    if (c.alpha(i) > 0.0) f.push_back(i);
    if (c.beta(i) > 0.0) g.push_back(i);
  }
  const auto nf = static_cast<Eigen::Index>(f.size());
  const auto ng = static_cast<Eigen::Index>(g.size());
  if (nf == 0 || ng == 0) return false;

  Eigen::MatrixXd aff(nf, nf);
  Eigen::MatrixXd bgg(ng, ng);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(nf, ng);
  for (Eigen::Index r = 0; r < nf; ++r) {
    for (Eigen::Index s = 0; s < nf; ++s) aff(r, s) = a(f[r], f[s]);
    for (Eigen::Index s = 0; s < ng; ++s) e(r, s) = f[r] == g[s] ? 1.0 : 0.0;
  }
  for (Eigen::Index r = 0; r < ng; ++r) {
    for (Eigen::Index s = 0; s < ng; ++s) bgg(r, s) = b(g[r], g[s]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(aff);
  if (llt.info() != Eigen::Success) return false;
  const Eigen::MatrixXd ainv_e = llt.solve(e);
  Eigen::MatrixXd m = e.transpose() * ainv_e;
  m = 0.5 * (m + m.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(m, bgg);
  if (ges.info() != Eigen::Success) return false;
  const double mu = ges.eigenvalues()(ng - 1);
  if (!(mu > 0.0)) return false;
  Eigen::VectorXd y = ges.eigenvectors().col(ng - 1);
  if (y.sum() < 0.0) y = -y;
  Eigen::VectorXd x = ainv_e * y;

  const double tol_x = 1e-12 * x.cwiseAbs().maxCoeff();
  const double tol_y = 1e-12 * y.cwiseAbs().maxCoeff();
  if (x.minCoeff() < -tol_x || y.minCoeff() < -tol_y) return false;

  Candidate out = c;
  out.alpha.setZero();
  out.beta.setZero();
  for (Eigen::Index r = 0; r < nf; ++r) out.alpha(f[r]) = std::max(x(r), 0.0);
  for (Eigen::Index r = 0; r < ng; ++r) out.beta(g[r]) = std::max(y(r), 0.0);
  if (!(out.alpha.dot(out.beta) > 0.0)) return false;
  out.value = quotient(a, b, out.alpha, out.beta);
  if (!(out.value <= c.value * (1.0 + 1e-12))) return false;
  out.converged = true;
  c = out;
  return true;
}

Candidate alternate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                    Eigen::VectorXd alpha, Eigen::VectorXd beta, int max_iters) {
  Candidate c;
  double value = quotient(a, b, alpha, beta);
  for (int it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXd u = qp_on_slice(a, beta);
    alpha = std::sqrt(beta.dot(b * beta) / u.dot(a * u)) * u;
    const Eigen::VectorXd w = qp_on_slice(b, alpha);
    beta = std::sqrt(alpha.dot(a * alpha) / w.dot(b * w)) * w;
    const double gauge = std::sqrt(alpha.dot(beta));
    alpha /= gauge;
    beta /= gauge;

    const double next = quotient(a, b, alpha, beta);
    c.iterations = it;
    const bool done = value - next < 1e-12 * std::max(1.0, next);
    value = std::min(value, next);
    if (done) {
      c.converged = true;
      break;
    }
  }
  c.alpha = alpha;
  c.beta = beta;
  c.value = quotient(a, b, alpha, beta);
  return c;
}

Eigen::VectorXd simplex_point(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.exponential();
  return x / x.sum();
}

// (Delta Q)^2 == (Delta P)^2 and denominator 1.
void balance_and_gauge(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                       const Eigen::VectorXd& w, Eigen::VectorXd& alpha,
                       Eigen::VectorXd& beta) {
  const double t = std::pow(beta.dot(b * beta) / alpha.dot(a * alpha), 0.25);
  alpha *= t;
  beta /= t;
  const double s = std::sqrt(alpha.dot(w.cwiseProduct(beta)));
  alpha /= s;
  beta /= s;
}

bool apply_floor(Eigen::VectorXd& x, double floor) {
  const double lo = floor * x.cwiseAbs().maxCoeff();
  bool hit = false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < lo) {
      x(i) = lo;
      hit = true;
    }
  }
  return hit;
}

bool strictly_positive(const Eigen::VectorXd& x, double floor) {
  return x.minCoeff() > floor * x.cwiseAbs().maxCoeff();
}

}  // namespace

double min_sigma_pm_two_mode(const TwoModeStandardParams& params, SignVariant s) {
  const TwoModeSpectra sp = two_mode_spectra(params);
  return 2.0 * (s == SignVariant::plus ? sp.kappa_minus_pt : sp.kappa_minus);
}

MinimizationResult min_sigma_pm_numeric(const StandardFormCM& v, SignVariant s,
                                        const OptimizerConfig& cfg) {
  require_bipartite(v, "min_sigma_pm_numeric");
  if (cfg.max_iters < 1 || cfg.max_restarts < 0 || !(cfg.positivity_floor >= 0.0)) {
    throw InvalidParameter("min_sigma_pm_numeric: bad optimizer configuration");
  }
  const Eigen::MatrixXd a = q_form(v.vq());
  const Eigen::MatrixXd b = p_form(v.vp(), s);
  const Eigen::Index n = a.rows();
  Rng rng(cfg.rng_seed);

  Candidate best;
  for (int start = 0; start <= cfg.max_restarts; ++start) {
    Eigen::VectorXd alpha0 = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd beta0 = Eigen::VectorXd::Ones(n);
    if (start > 0) {
      alpha0 = simplex_point(rng, n);
      beta0 = simplex_point(rng, n);
    }
    Candidate c = alternate(a, b, alpha0, beta0, cfg.max_iters);
    polish(a, b, c);
    const bool better = (c.converged && !best.converged) ||
                        (c.converged == best.converged && c.value < best.value);
    if (better) best = c;
  }

  MinimizationResult out;
  out.value = best.value;
  out.converged = best.converged;
  out.iterations = best.iterations;
  out.restarts_used = cfg.max_restarts;
  out.alpha = best.alpha;
  out.beta = best.beta;
  balance_and_gauge(a, b, Eigen::VectorXd::Ones(n), out.alpha, out.beta);
  const bool ha = apply_floor(out.alpha, cfg.positivity_floor);
  const bool hb = apply_floor(out.beta, cfg.positivity_floor);
  out.boundary_flag = ha || hb;
  return out;
}

double min_sigma_ab(const StandardFormCM& v) {
  require_bipartite(v, "min_sigma_ab");
  const Eigen::Index na = v.n_alice();
  const double log_ratio = log_det_pd(v.vq(), "V^(q)") + log_det_pd(v.vp(), "V^(p)") -
                           log_det_pd(v.vq().topLeftCorner(na, na), "V_A^(q)") -
                           log_det_pd(v.vp().topLeftCorner(na, na), "V_A^(p)");
  return 2.0 * std::exp(0.5 * log_ratio);
}

MinimizationResult min_sigma_ab_numeric(const StandardFormCM& v,
                                        const OptimizerConfig& cfg) {
  require_bipartite(v, "min_sigma_ab_numeric");
  const Eigen::Index na = v.n_alice();
  const Eigen::MatrixXd& vq = v.vq();
  const Eigen::MatrixXd& vp = v.vp();

  Eigen::LLT<Eigen::MatrixXd> llt_q(vq.topLeftCorner(na, na));
  Eigen::LLT<Eigen::MatrixXd> llt_p(vp.topLeftCorner(na, na));
  if (llt_q.info() != Eigen::Success || llt_p.info() != Eigen::Success) {
    throw SingularBlock("min_sigma_ab_numeric: Alice's block is singular");
  }
  const Eigen::VectorXd gq = vq.col(na).head(na);
  const Eigen::VectorXd gp = vp.col(na).head(na);
  // Alice's weights per unit of Bob's weight.
  const Eigen::VectorXd x = llt_q.solve(gq);
  const Eigen::VectorXd y = -llt_p.solve(gp);
  const double rq = vq(na, na) - x.dot(gq);
  const double rp = vp(na, na) + y.dot(gp);
  if (!(rq > 0.0) || !(rp > 0.0)) {
    throw SingularBlock("min_sigma_ab_numeric: conditional variance is not positive");
  }
  const double eps = std::exp(0.5 * (std::log(rp) - std::log(rq)));

  MinimizationResult out;
  out.value = eps * rq + rp / eps;
  out.alpha.resize(na + 1);
  out.beta.resize(na + 1);
  out.alpha << x, 1.0;
  out.beta << y, 1.0;
  out.alpha *= std::sqrt(eps);
  out.beta /= std::sqrt(eps);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(na + 1);
  w(na) = 1.0;
  balance_and_gauge(q_form(vq), p_form(vp, SignVariant::plus), w, out.alpha, out.beta);
  out.converged = true;
  out.iterations = 1;
  out.restarts_used = 0;
  out.boundary_flag = !strictly_positive(out.alpha, cfg.positivity_floor) ||
                      !strictly_positive(out.beta, cfg.positivity_floor);
  return out;
}

double min_sigma_ba(const StandardFormCM& v) {
  require_bipartite(v, "min_sigma_ba");
  const Eigen::MatrixXd s = schur_complement(v.to_covariance(), Eliminate::B);
  return 2.0 * symplectic_eigenvalues(s).min();
}

MinimizationResult min_sigma_ba_numeric(const StandardFormCM& v,
                                        const OptimizerConfig& cfg) {
  require_bipartite(v, "min_sigma_ba_numeric");
  const Eigen::Index na = v.n_alice();
  const Eigen::MatrixXd& vq = v.vq();
  const Eigen::MatrixXd& vp = v.vp();
  const Eigen::VectorXd gq = vq.col(na).head(na);
  const Eigen::VectorXd gp = vp.col(na).head(na);
  const double bq = vq(na, na);
  const double bp = vp(na, na);
  if (!(bq > 0.0) || !(bp > 0.0)) throw SingularBlock("min_sigma_ba_numeric: V_B is singular");

  const Eigen::MatrixXd sq = vq.topLeftCorner(na, na) - gq * gq.transpose() / bq;
  const Eigen::MatrixXd sp = vp.topLeftCorner(na, na) - gp * gp.transpose() / bp;
  Eigen::LLT<Eigen::MatrixXd> llt_q(sq);
  Eigen::LLT<Eigen::MatrixXd> llt_p(sp);
  if (llt_q.info() != Eigen::Success || llt_p.info() != Eigen::Success) {
    throw SingularBlock("min_sigma_ba_numeric: Schur complement is singular");
  }
  Eigen::MatrixXd sq_inv = llt_q.solve(Eigen::MatrixXd::Identity(na, na));
  sq_inv = 0.5 * (sq_inv + sq_inv.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(sq_inv, sp);
  if (ges.info() != Eigen::Success) {
    throw Error("min_sigma_ba_numeric: eigen-solver failed");
  }
  const double mu = ges.eigenvalues()(na - 1);
  Eigen::VectorXd beta_a = ges.eigenvectors().col(na - 1);
  if (beta_a.sum() < 0.0) beta_a = -beta_a;
  const Eigen::VectorXd alpha_a = sq_inv * beta_a;

  MinimizationResult out;
  out.value = 2.0 / std::sqrt(mu);
  out.alpha.resize(na + 1);
  out.beta.resize(na + 1);
  out.alpha << alpha_a, gq.dot(alpha_a) / bq;
  out.beta << beta_a, -gp.dot(beta_a) / bp;
  Eigen::VectorXd w = Eigen::VectorXd::Ones(na + 1);
  w(na) = 0.0;
  balance_and_gauge(q_form(vq), p_form(vp, SignVariant::plus), w, out.alpha, out.beta);
  out.converged = true;
  out.iterations = 1;
  out.restarts_used = 0;
  out.boundary_flag = !strictly_positive(out.alpha, cfg.positivity_floor) ||
                      !strictly_positive(out.beta, cfg.positivity_floor);
  return out;
}

MinimizationResult minimize(const StandardFormCM& v, Functional f,
                            const OptimizerConfig& cfg) {
  switch (f) {
    case Functional::sigma_plus:
      return min_sigma_pm_numeric(v, SignVariant::plus, cfg);
    case Functional::sigma_minus:
      return min_sigma_pm_numeric(v, SignVariant::minus, cfg);
    case Functional::sigma_ab:
      return min_sigma_ab_numeric(v, cfg);
    case Functional::sigma_ba:
      return min_sigma_ba_numeric(v, cfg);
  }
  throw InvalidParameter("minimize: unknown functional");
}

BaUnsteerability check_ba_unsteerability(const CovarianceMatrix& v, double tol) {
  const int na = v.n_alice();
  if (na < 1) throw DimensionError("check_ba_unsteerability: need two parties");
  const Partition part = partition(v);
  BaUnsteerability out;
  out.schur = schur_complement(v, Eliminate::B);
  out.min_eigenvalue = min_eigenvalue_with_form(out.schur, symplectic_form(na));
  out.matrix_ok = out.min_eigenvalue >= -tol;
  out.det_ratio = v.matrix().determinant() / part.vb.determinant();
  out.det_ok = out.det_ratio >= std::ldexp(1.0, -2 * na) - tol;

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(v.dim(), v.dim());
  j.topLeftCorner(2 * na, 2 * na) = symplectic_form(na);
  out.full_min_eigenvalue = min_eigenvalue_with_form(v.matrix(), j);
  return out;
}

AbUnsteerability check_ab_unsteerability(const CovarianceMatrix& v, double tol) {
  const int na = v.n_alice();
  if (na < 1) throw DimensionError("check_ab_unsteerability: need two parties");
  const Partition part = partition(v);
  AbUnsteerability out;
  out.schur = schur_complement(v, Eliminate::A);
  out.schur_min_eigenvalue = min_eigenvalue_with_form(out.schur, symplectic_form(1));
  out.det_ratio = v.matrix().determinant() / part.va.determinant();
  out.det_ok = out.det_ratio >= 0.25 - tol;

  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(v.dim(), v.dim());
  j.bottomRightCorner(2, 2) = symplectic_form(1);
  out.min_eigenvalue = min_eigenvalue_with_form(v.matrix(), j);
  out.matrix_ok = out.min_eigenvalue >= -tol;
  return out;
}

}  // namespace cvw
