// Copyright 2026 The colocinfo Authors
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

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "colocinfo/assoc_location.hpp"
#include "colocinfo/detail/special.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/options.hpp"
#include "colocinfo/posterior.hpp"

namespace colocinfo {

/// Co-location distribution p_ij = P(X1 = i, X2 = j): the activity types of
/// two units drawn with replacement from the same random location.
template <typename Scalar = double>
struct ColocDistribution {
  Grid<Scalar> p;           // symmetric N_i × N_i
  Vector<Scalar> marginal;  // p_i

  Index size() const noexcept { return p.rows(); }
};

namespace detail {

template <typename Scalar>
void mirror_upper(Grid<Scalar>& g) {
  for (Index j = 0; j < g.cols(); ++j)
    for (Index i = j + 1; i < g.rows(); ++i) g(i, j) = g(j, i);
}

// Moments of A_c = p_{i|c} p_{j|c} under p_{·|c} ~ Dir(q̃_c·):
// mean E[A_c] and variance Var[A_c], written so the variance never forms
// E[A²] - E[A]² explicitly.
template <typename Scalar>
struct ConditionalPairMoments {
  Scalar mean;
  Scalar var;
};

template <typename Scalar>
ConditionalPairMoments<Scalar> conditional_pair_moments(Scalar a, Scalar b, Scalar s, bool same) {
  const Scalar d4 = s * (s + 1) * (s + 2) * (s + 3);
  if (same) {
    const Scalar mean = a * (a + 1) / (s * (s + 1));
    // E[p⁴] / E[p²] - E[p²] = E[p²] · (s - a)(4as + 6(s + a) + 6) / d4
    const Scalar var = mean * (s - a) * (4 * a * s + 6 * (s + a) + 6) / d4;
    return {mean, std::max(Scalar(0), var)};
  }
  const Scalar mean = a * b / (s * (s + 1));
  const Scalar var = mean * ((a + b + 1) * s * (s + 1) - 4 * a * b * s - 6 * a * b) / d4;
  return {mean, std::max(Scalar(0), var)};
}

template <typename Scalar>
void check_pair(const Posterior<Scalar>& post, Index i, Index j) {
  post.check_activity(i);
  post.check_activity(j);
}

}  // namespace detail

/// Plug-in co-location distribution Σ_c p_{i|c} p_{j|c} p_c. Locations with
/// p_c = 0 (possible for ML estimates) contribute nothing.
template <typename Scalar>
ColocDistribution<Scalar> coloc_distribution(const JointProbEstimate<Scalar>& j) {
  Vector<Scalar> inv_row(j.num_locations());
  for (Index c = 0; c < j.num_locations(); ++c)
    inv_row(c) = j.location(c) > 0 ? Scalar(1) / j.location(c) : Scalar(0);
  ColocDistribution<Scalar> out;
  out.p = j.p.transpose() * inv_row.asDiagonal() * j.p;
  detail::mirror_upper(out.p);
  out.marginal = j.activity;
  return out;
}

/// Posterior mean E[p_ij] = Σ_c E[p_{i|c} p_{j|c}] E[p_c] from Dirichlet
/// product moments. Its marginals are p̂_i.
template <typename Scalar>
ColocDistribution<Scalar> coloc_posterior_mean(const Posterior<Scalar>& post) {
  const auto& q = post.smoothed();
  const Vector<Scalar> w = (post.location_marginals().array() + Scalar(1)).inverse().matrix();
  ColocDistribution<Scalar> out;
  out.p = q.transpose() * w.asDiagonal() * q;
  out.p.diagonal() += q.transpose() * w;
  out.p /= post.total();
  detail::mirror_upper(out.p);
  out.marginal = post.activity_marginals() / post.total();
  return out;
}

/// Exact posterior Var[p_ij], including the uncertainty in p_c and the
/// negative Dirichlet covariances between locations.
template <typename Scalar>
Scalar var_pij_exact(const Posterior<Scalar>& post, Index i, Index j) {
  detail::check_pair(post, i, j);
  const Scalar qt = post.total();
  const auto& q = post.smoothed();
  const auto& qc = post.location_marginals();
  Scalar own = 0, w_sum = 0, w_sq = 0;
  for (Index c = 0; c < q.rows(); ++c) {
    const auto m = detail::conditional_pair_moments(q(c, i), q(c, j), qc(c), i == j);
    const Scalar ey = qc(c) / qt;
    const Scalar vy = qc(c) * (qt - qc(c)) / (qt * qt * (qt + 1));
    own += m.var * ey * ey + vy * m.mean * m.mean + m.var * vy;
    const Scalar w = m.mean * qc(c);
    w_sum += w;
    w_sq += w * w;
  }
  // Σ_{c≠c'} E[A_c] E[A_c'] Cov[p_c, p_c'] with Cov = -q̃_c q̃_c' / (q̃²(q̃+1))
  const Scalar cross = -(w_sum * w_sum - w_sq) / (qt * qt * (qt + 1));
  return std::max(Scalar(0), own + cross);
}

/// Var[p_ij] with p_c fixed at p̂_c: Σ_c p̂_c² Var[p_{i|c} p_{j|c}].
template <typename Scalar>
Scalar var_pij_approx(const Posterior<Scalar>& post, Index i, Index j) {
  detail::check_pair(post, i, j);
  const Scalar qt = post.total();
  const auto& q = post.smoothed();
  const auto& qc = post.location_marginals();
  Scalar v = 0;
  for (Index c = 0; c < q.rows(); ++c) {
    const auto m = detail::conditional_pair_moments(q(c, i), q(c, j), qc(c), i == j);
    const Scalar pc = qc(c) / qt;
    v += pc * pc * m.var;
  }
  return v;
}

/// Resolves `automatic` against the N_c·N_i threshold.
template <typename Scalar>
bool use_exact_variance(const Posterior<Scalar>& post, const AnalysisOptions& opts) {
  switch (opts.variance) {
    case VarianceMethod::exact: return true;
    case VarianceMethod::approx: return false;
    default: return post.num_locations() * post.num_activities() <= opts.approx_threshold;
  }
}

template <typename Scalar>
Scalar var_pij(const Posterior<Scalar>& post, Index i, Index j, const AnalysisOptions& opts = {}) {
  return use_exact_variance(post, opts) ? var_pij_exact(post, i, j) : var_pij_approx(post, i, j);
}

/// First-order Var[PMI(p_ij)] under the full Dirichlet covariance of p,
/// linearized at the plug-in point p̂.
template <typename Scalar>
Scalar pmi_ij_delta_variance(const Posterior<Scalar>& post, Index i, Index j) {
  detail::check_pair(post, i, j);
  const Scalar qt = post.total();
  const auto& q = post.smoothed();
  const auto& qc = post.location_marginals();
  const Scalar pi = post.activity_marginals()(i) / qt;
  const Scalar pj = post.activity_marginals()(j) / qt;
  Scalar pij = 0;
  for (Index d = 0; d < q.rows(); ++d) pij += q(d, i) * q(d, j) / (qc(d) * qt);

  // Row d of the gradient is a constant b_d plus corrections at columns i, j.
  Scalar s1 = 0, s2 = 0;
  for (Index d = 0; d < q.rows(); ++d) {
    const Scalar pd = qc(d) / qt, pdi = q(d, i) / qt, pdj = q(d, j) / qt;
    const Scalar b = -pdi * pdj / (pd * pd * pij);
    s1 += b * pd;
    s2 += b * b * pd;
    if (i == j) {
      const Scalar e = 2 * pdi / (pd * pij) - 2 / pi;
      s1 += pdi * e;
      s2 += pdi * ((b + e) * (b + e) - b * b);
    } else {
      const Scalar ei = pdj / (pd * pij) - 1 / pi;
      const Scalar ej = pdi / (pd * pij) - 1 / pj;
      s1 += pdi * ei + pdj * ej;
      s2 += pdi * ((b + ei) * (b + ei) - b * b) + pdj * ((b + ej) * (b + ej) - b * b);
    }
  }
  return std::max(Scalar(0), (s2 - s1 * s1) / (qt + 1));
}

/// Exact posterior Cov[p_ij, p_k] for k = i or k = j.
template <typename Scalar>
Scalar cov_pij_marginal(const Posterior<Scalar>& post, Index i, Index j, Index k) {
  detail::check_pair(post, i, j);
  if (k != i && k != j) throw IndexError("marginal must be one of the pair");
  const auto& q = post.smoothed();
  const auto& qc = post.location_marginals();
  const Scalar qt = post.total();
  const Index o = (k == i) ? j : i;
  Scalar own = 0, sa = 0, sb = 0, sab = 0;
  for (Index c = 0; c < q.rows(); ++c) {
    const Scalar a = q(c, k), b = q(c, o), s = qc(c);
    const Scalar ea = (i == j) ? a * (a + 1) / (s * (s + 1)) : a * b / (s * (s + 1));
    const Scalar eb = a / s;
    const Scalar eab = (i == j) ? a * (a + 1) * (a + 2) / (s * (s + 1) * (s + 2))
                                : a * (a + 1) * b / (s * (s + 1) * (s + 2));
    const Scalar ey = s / qt;
    own += s * (s + 1) / (qt * (qt + 1)) * eab - ey * ey * ea * eb;
    sa += s * ea;
    sb += s * eb;
    sab += s * s * ea * eb;
  }
  return own - (sa * sb - sab) / (qt * qt * (qt + 1));
}

/// Var[PMI(p_ij)] by the delta method on (p_ij, p_i, p_j) with their
/// posterior covariance, given E[p_ij] and Var[p_ij].
template <typename Scalar>
Scalar pmi_ij_variance(const Posterior<Scalar>& post, Index i, Index j, Scalar e_pij,
                       Scalar v_pij) {
  detail::check_pair(post, i, j);
  const Scalar qt = post.total();
  const Scalar pi = post.activity_marginals()(i) / qt;
  const Scalar pj = post.activity_marginals()(j) / qt;
  Scalar var;
  if (i == j) {
    const Scalar c = cov_pij_marginal(post, i, j, i);
    var = v_pij / (e_pij * e_pij) + 4 * (1 - pi) / (pi * (qt + 1)) - 4 * c / (e_pij * pi);
  } else {
    const Scalar ci = cov_pij_marginal(post, i, j, i);
    const Scalar cj = cov_pij_marginal(post, i, j, j);
    var = v_pij / (e_pij * e_pij) + (1 - pi) / (pi * (qt + 1)) + (1 - pj) / (pj * (qt + 1)) -
          2 * ci / (e_pij * pi) - 2 * cj / (e_pij * pj) - 2 / (qt + 1);
  }
  return std::max(Scalar(0), var);
}

namespace detail {

template <typename Scalar>
AssocCell<Scalar> coloc_cell(const Posterior<Scalar>& post, Index i, Index j, Scalar plug_pij,
                             Scalar e_pij, Scalar v_pij, Estimator est) {
  using std::abs;
  using std::log;
  using std::sqrt;
  const Scalar qt = post.total();
  const Scalar pi = post.activity_marginals()(i) / qt;
  const Scalar pj = post.activity_marginals()(j) / qt;
  AssocCell<Scalar> cell;
  cell.point = log(plug_pij / (pi * pj));
  if (est == Estimator::taylor) {
    cell.mean = log(e_pij / (pi * pj)) + v_pij / 2 *
                                 (-Scalar(1) / (e_pij * e_pij) + Scalar(1) / (pi * pi) +
                                  Scalar(1) / (pj * pj));
    cell.sd = sqrt(v_pij) * abs(Scalar(1) / e_pij - Scalar(1) / pi - Scalar(1) / pj);
  } else {
    const Scalar lq = digamma(qt);
    cell.mean = log(e_pij) - v_pij / (2 * e_pij * e_pij) -
                (digamma(post.activity_marginals()(i)) - lq) -
                (digamma(post.activity_marginals()(j)) - lq);
    cell.sd = sqrt(pmi_ij_variance(post, i, j, e_pij, v_pij));
  }
  return cell;
}

}  // namespace detail

/// PMI(p_ij): point at the plug-in p_ij of p̂, posterior mean and sd from
/// E[p_ij] and Var[p_ij].
template <typename Scalar>
AssocCell<Scalar> coloc_pmi(const Posterior<Scalar>& post, Index i, Index j,
                            const AnalysisOptions& opts = {}) {
  detail::check_pair(post, i, j);
  const auto& q = post.smoothed();
  const auto& qc = post.location_marginals();
  Scalar e = 0, plug = 0;
  for (Index c = 0; c < q.rows(); ++c) {
    e += detail::conditional_pair_moments(q(c, i), q(c, j), qc(c), i == j).mean * qc(c);
    plug += q(c, i) * q(c, j) / qc(c);
  }
  e /= post.total();
  plug /= post.total();
  const Scalar v = var_pij(post, i, j, opts);
  return in_base(detail::coloc_cell(post, i, j, plug, e, v, opts.estimator), opts.log_base);
}

/// Plug-in PMI(p_ij) of an explicit co-location distribution, in nats.
template <typename Scalar>
Scalar coloc_pmi_point(const ColocDistribution<Scalar>& d, Index i, Index j) {
  if (i < 0 || j < 0 || i >= d.size() || j >= d.size()) {
    throw IndexError("activity pair out of range");
  }
  using std::log;
  return log(d.p(i, j)) - log(d.marginal(i)) - log(d.marginal(j));
}

/// Symmetric N_i × N_i matrix of PMI(p_ij). Each unordered pair is computed once.
template <typename Scalar>
AssocMatrix<Scalar> colocation_association_matrix(const Posterior<Scalar>& post,
                                                  const AnalysisOptions& opts = {}) {
  const Index n = post.num_activities();
  const bool exact = use_exact_variance(post, opts);
  const auto mean = coloc_posterior_mean(post);
  const auto plug = coloc_distribution(point_estimates(post));
  AssocMatrix<Scalar> out;
  out.kind = AssocKind::colocation;
  out.row_labels = post.activities();
  out.col_labels = post.activities();
  out.log_base = opts.log_base;
  out.estimator = opts.estimator;
  out.prior = post.prior_description();
  out.variance_path = exact ? "exact" : "approx";
  out.point.resize(n, n);
  out.mean.resize(n, n);
  out.sd.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const Scalar v = exact ? var_pij_exact(post, i, j) : var_pij_approx(post, i, j);
      const auto cell =
          in_base(detail::coloc_cell(post, i, j, plug.p(i, j), mean.p(i, j), v, opts.estimator), opts.log_base);
      out.point(i, j) = out.point(j, i) = cell.point;
      out.mean(i, j) = out.mean(j, i) = cell.mean;
      out.sd(i, j) = out.sd(j, i) = cell.sd;
    }
  }
  return out;
}

/// Ellison–Glaeser co-agglomeration
/// γ_ij = Σ_c (p_{c|i} - p_c)(p_{c|j} - p_c) / (1 - Σ_c p_c²), reference p_c.
template <typename Scalar>
Scalar eg_coagglomeration(const JointProbEstimate<Scalar>& jp, Index i, Index j) {
  if (i < 0 || j < 0 || i >= jp.num_activities() || j >= jp.num_activities()) {
    throw IndexError("activity pair out of range");
  }
  const Scalar denom = Scalar(1) - jp.location.squaredNorm();
  if (!(denom > Scalar(1e-14))) {
    throw DegenerateGeographyError("co-agglomeration needs more than one effective location");
  }
  if (!(jp.activity(i) > 0) || !(jp.activity(j) > 0)) {
    throw NumericError("co-agglomeration undefined for an activity with zero mass");
  }
  const Vector<Scalar> di = jp.p.col(i) / jp.activity(i) - jp.location;
  const Vector<Scalar> dj = jp.p.col(j) / jp.activity(j) - jp.location;
  return di.dot(dj) / denom;
}

template <typename Scalar>
Grid<Scalar> eg_coagglomeration_matrix(const JointProbEstimate<Scalar>& jp) {
  const Index n = jp.num_activities();
  Grid<Scalar> g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i) g(i, j) = g(j, i) = eg_coagglomeration(jp, i, j);
  return g;
}

}  // namespace colocinfo
