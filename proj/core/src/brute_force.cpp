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

// Derivative-free search over weight directions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvw/errors.hpp"
#include "cvw/optimizers.hpp"
#include "cvw/rng.hpp"

namespace cvw {
namespace {

enum class Domain {
  positive,  // alpha, beta in the closed positive orthant
  bob_unit,  // Alice's weights free, Bob's weights fixed to 1
  signed_,   // all weights free
};

Domain domain_of(Functional f) {
  switch (f) {
    case Functional::sigma_plus:
    case Functional::sigma_minus:
      return Domain::positive;
    case Functional::sigma_ab:
      return Domain::bob_unit;
    case Functional::sigma_ba:
      return Domain::signed_;
  }
  return Domain::positive;
}

class Objective {
 public:
  Objective(const StandardFormCM& v, Functional f)
      : a_(q_form(v.vq())), b_(p_form(v.vp(), sign_of(f))), f_(f) {}

  // Minimum over independent positive scales of alpha and beta.
  double operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& w) const {
    const double d = std::abs(denominator(f_, u, w));
    if (!(d > 1e-300)) return std::numeric_limits<double>::infinity();
    const double q = u.dot(a_ * u);
    const double p = w.dot(b_ * w);
    return 2.0 * std::sqrt(q * p) / d;
  }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  Functional f_;
};

// Free coordinates per weight vector and how they embed.
Eigen::Index free_dim(Domain d, Eigen::Index n) { return d == Domain::bob_unit ? n - 1 : n; }

Eigen::VectorXd embed(Domain d, const Eigen::VectorXd& x, Eigen::Index n) {
  if (d != Domain::bob_unit) return x;
  Eigen::VectorXd out(n);
  out << x, 1.0;
  return out;
}

double lattice_search(const Objective& obj, Domain d, Eigen::Index n, int m) {
  const Eigen::Index k = free_dim(d, n);
  const Eigen::Index dims = 2 * k;
  const double lo = d == Domain::positive ? 0.0 : -1.0;
  double total = 1.0;
  for (Eigen::Index i = 0; i < dims; ++i) total *= m;
  if (total > 5e8) throw InvalidParameter("brute_force_min: lattice too large");

  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  Eigen::VectorXd u(k);
  Eigen::VectorXd w(k);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (Eigen::Index i = 0; i < k; ++i) {
      u(i) = lo + (1.0 - lo) * idx[static_cast<std::size_t>(i)] / (m - 1);
      w(i) = lo + (1.0 - lo) * idx[static_cast<std::size_t>(k + i)] / (m - 1);
    }
    best = std::min(best, obj(embed(d, u, n), embed(d, w, n)));
    Eigen::Index pos = 0;
    while (pos < dims && ++idx[static_cast<std::size_t>(pos)] == m) {
      idx[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == dims) break;
  }
  return best;
}

Eigen::VectorXd sample(Rng& rng, Domain d, Eigen::Index n) {
  Eigen::VectorXd x(free_dim(d, n));
  if (d == Domain::positive) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.exponential();
    return x / x.sum();
  }
  if (d == Domain::bob_unit) {
    // Cauchy-like spread covers large Alice weights.
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x(i) = std::tan(3.141592653589793 * (rng.uniform() - 0.5));
    }
    return x;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  return x / x.norm();
}

Eigen::VectorXd perturb(Rng& rng, Domain d, const Eigen::VectorXd& x, double sigma) {
  Eigen::VectorXd y = x;
  if (d == Domain::positive) {
    // Additive with clamping, so faces of the orthant are reachable exactly.
    const double step = sigma / static_cast<double>(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = std::max(0.0, y(i) + step * rng.normal());
    const double sum = y.sum();
    return sum > 0.0 ? Eigen::VectorXd(y / sum) : x;
  }
  const double scale = d == Domain::bob_unit ? std::max(1.0, x.norm()) : 1.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += sigma * scale * rng.normal();
  if (d == Domain::signed_) y /= y.norm();
  return y;
}

double random_search(const Objective& obj, Domain d, Eigen::Index n, const GridSpec& g) {
  Rng rng(g.seed);
  const long n_local = static_cast<long>(std::floor(g.refine_fraction * g.samples));
  const long n_global = std::max(1L, g.samples - n_local);

  Eigen::VectorXd best_u = sample(rng, d, n);
  Eigen::VectorXd best_w = sample(rng, d, n);
  double best = obj(embed(d, best_u, n), embed(d, best_w, n));
  for (long s = 1; s < n_global; ++s) {
    Eigen::VectorXd u = sample(rng, d, n);
    Eigen::VectorXd w = sample(rng, d, n);
    const double val = obj(embed(d, u, n), embed(d, w, n));
    if (val < best) {
      best = val;
      best_u = std::move(u);
      best_w = std::move(w);
    }
  }

  // (1+1) search with a success-driven step size.
  double sigma = 0.3;
  for (long s = 0; s < n_local; ++s) {
    const int which = static_cast<int>(rng.next() % 3);
    Eigen::VectorXd u = which == 2 ? best_u : perturb(rng, d, best_u, sigma);
    Eigen::VectorXd w = which == 1 ? best_w : perturb(rng, d, best_w, sigma);
    const double val = obj(embed(d, u, n), embed(d, w, n));
    if (val < best) {
      best = val;
      best_u = std::move(u);
      best_w = std::move(w);
      sigma = std::min(1.0, sigma * 1.5);
    } else {
      sigma = std::max(1e-9, sigma * 0.95);
      if (sigma <= 1e-9) sigma = 0.3;
    }
  }
  return best;
}

}  // namespace

double brute_force_min(const StandardFormCM& v, Functional f, const GridSpec& grid) {
  if (v.n_modes() < 2) throw DimensionError("brute_force_min: need two parties");
  const Domain d = domain_of(f);
  const Objective obj(v, f);
  const Eigen::Index n = v.n_modes();
  if (grid.kind == GridSpec::Kind::lattice) {
    if (grid.points_per_dim < 3) {
      throw InvalidParameter("brute_force_min: need at least 3 lattice points per dimension");
    }
    return lattice_search(obj, d, n, grid.points_per_dim);
  }
  if (grid.samples < 1 || !(grid.refine_fraction >= 0.0) || grid.refine_fraction >= 1.0) {
    throw InvalidParameter("brute_force_min: bad random-search parameters");
  }
  return random_search(obj, d, n, grid);
}

}  // namespace cvw
