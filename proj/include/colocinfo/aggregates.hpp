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
#include <utility>
#include <vector>

#include "colocinfo/assoc_colocation.hpp"
#include "colocinfo/assoc_location.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/options.hpp"
#include "colocinfo/posterior.hpp"

namespace colocinfo {

namespace detail {

// Posterior moments of a functional f of the Dirichlet-distributed joint p
// from its per-cell derivatives at p̂, with Cov[p] = (diag p - ppᵀ)/(q̃+1).
// Every KL here satisfies f(λp) = f(p) - log λ, hence pᵀHp = 1.
template <typename Scalar>
struct DeltaAccumulator {
  Scalar s1 = 0;  // Σ p g
  Scalar s2 = 0;  // Σ p g²
  Scalar sh = 0;  // Σ p H_kk

  void add(Scalar weight, Scalar g, Scalar h) {
    s1 += weight * g;
    s2 += weight * g * g;
    sh += weight * h;
  }
  Scalar variance(Scalar qt) const { return std::max(Scalar(0), (s2 - s1 * s1) / (qt + 1)); }
  Scalar mean_shift(Scalar qt) const { return (sh - Scalar(1)) / (2 * (qt + 1)); }
};

// KL of column i's conditional over rows against the row marginal, for the
// posterior grid q̃ with row sums `rows` and column sums `cols`.
template <typename Scalar>
AssocCell<Scalar> kl_column(const Grid<Scalar>& q, const Vector<Scalar>& rows,
                            const Vector<Scalar>& cols, Scalar qt, Index i) {
  using std::log;
  using std::sqrt;
  const Scalar a = cols(i) / qt;
  Scalar f = 0;
  for (Index d = 0; d < q.rows(); ++d) {
    const Scalar x = q(d, i) / qt, r = rows(d) / qt;
    f += x * log(x / r);
  }
  DeltaAccumulator<Scalar> acc;
  for (Index d = 0; d < q.rows(); ++d) {
    const Scalar x = q(d, i) / qt, r = rows(d) / qt;
    // cells (d, k≠i) move only the row total
    acc.add((rows(d) - q(d, i)) / qt, -x / (r * a), x / (r * r * a));
    const Scalar phi1 = log(x / r) + 1 - x / r;
    const Scalar phi2 = 1 / x - 2 / r + x / (r * r);
    const Scalar g = phi1 / a - f / (a * a) - 1 / a;
    const Scalar h = phi2 / a - 2 * phi1 / (a * a) + 2 * f / (a * a * a) + 1 / (a * a);
    acc.add(x, g, h);
  }
  AssocCell<Scalar> cell;
  cell.point = f / a - log(a);
  cell.mean = cell.point + acc.mean_shift(qt);
  cell.sd = sqrt(acc.variance(qt));
  return cell;
}

// KL of p_{j|i} against p_j over the plug-in co-location distribution.
template <typename Scalar>
AssocCell<Scalar> kl_codependence(const Posterior<Scalar>& post, Index i) {
  using std::log;
  using std::sqrt;
  const Scalar qt = post.total();
  const Grid<Scalar> p = post.smoothed() / qt;
  const Vector<Scalar> pd = post.location_marginals() / qt;
  const Vector<Scalar> m = post.activity_marginals() / qt;
  const Index nc = p.rows(), ni = p.cols();
  const Scalar a = m(i);

  const Vector<Scalar> big_a = p.transpose() * p.col(i).cwiseQuotient(pd);  // P_ij over j
  const Vector<Scalar> ell = (big_a.array() / m.array()).log().matrix();
  const Scalar f = big_a.dot(ell);

  DeltaAccumulator<Scalar> acc;
  for (Index d = 0; d < nc; ++d) {
    const Scalar s = pd(d), ui = p(d, i);
    Scalar r = 0, w = 0;
    for (Index j = 0; j < ni; ++j) {
      r += p(d, j) * (ell(j) + 1);
      w += p(d, j) * p(d, j) / big_a(j);
    }
    for (Index k = 0; k < ni; ++k) {
      const Scalar e = k == i ? Scalar(1) : Scalar(0);
      const Scalar uk = p(d, k), ak = big_a(k), mk = m(k);
      // dA_j = α u_j + β[j=k], d²A_j = γ u_j + δ[j=k]
      const Scalar alpha = e / s - ui / (s * s);
      const Scalar beta = ui / s;
      const Scalar gamma = -2 * e / (s * s) + 2 * ui / (s * s * s);
      const Scalar delta = 2 * e / s - 2 * ui / (s * s);
      const Scalar dak = alpha * uk + beta;
      const Scalar f1 = alpha * r + beta * (ell(k) + 1) - ak / mk;
      const Scalar f2 = gamma * r + delta * (ell(k) + 1) + alpha * alpha * w +
                        2 * alpha * beta * uk / ak + beta * beta / ak - 2 * dak / mk +
                        ak / (mk * mk);
      const Scalar g = f1 / a - e * f / (a * a) - e / a;
      const Scalar h = f2 / a - 2 * e * f1 / (a * a) + 2 * e * f / (a * a * a) + e / (a * a);
      acc.add(uk, g, h);
    }
  }
  AssocCell<Scalar> cell;
  cell.point = f / a - log(a);
  cell.mean = cell.point + acc.mean_shift(qt);
  cell.sd = sqrt(acc.variance(qt));
  return cell;
}

// Σ x log(x / y) with 0·log 0 = 0.
template <typename Scalar>
Scalar xlogx_ratio(Scalar x, Scalar y) {
  using std::log;
  return x > 0 ? x * log(x / y) : Scalar(0);
}

}  // namespace detail

/// Localization KL(p_{c|i} | p_c): point at p̂, second-order posterior mean
/// and delta-method sd.
template <typename Scalar>
AssocCell<Scalar> localization(const Posterior<Scalar>& post, Index i,
                               const AnalysisOptions& opts = {}) {
  post.check_activity(i);
  return in_base(detail::kl_column(post.smoothed(), post.location_marginals(),
                                   post.activity_marginals(), post.total(), i),
                 opts.log_base);
}

/// Specialization KL(p_{i|c} | p_i).
template <typename Scalar>
AssocCell<Scalar> specialization(const Posterior<Scalar>& post, Index c,
                                 const AnalysisOptions& opts = {}) {
  post.check_location(c);
  const Grid<Scalar> qt = post.smoothed().transpose();
  return in_base(detail::kl_column(qt, post.activity_marginals(), post.location_marginals(),
                                   post.total(), c),
                 opts.log_base);
}

/// Co-dependence KL(p_{j|i} | p_j), self term included.
template <typename Scalar>
AssocCell<Scalar> codependence(const Posterior<Scalar>& post, Index i,
                               const AnalysisOptions& opts = {}) {
  post.check_activity(i);
  return in_base(detail::kl_codependence(post, i), opts.log_base);
}

template <typename Scalar>
Scalar codependence_sd(const Posterior<Scalar>& post, Index i, const AnalysisOptions& opts = {}) {
  return codependence(post, i, opts).sd;
}

/// Point-only localization of an explicit joint estimate (ML path allowed).
template <typename Scalar>
Scalar localization(const JointProbEstimate<Scalar>& jp, Index i) {
  if (i < 0 || i >= jp.num_activities()) throw IndexError("activity index out of range");
  const Scalar a = jp.activity(i);
  if (!(a > 0)) throw NumericError("localization undefined for an activity with zero mass");
  Scalar kl = 0;
  for (Index c = 0; c < jp.num_locations(); ++c)
    kl += detail::xlogx_ratio(jp.p(c, i) / a, jp.location(c));
  return kl;
}

template <typename Scalar>
Scalar specialization(const JointProbEstimate<Scalar>& jp, Index c) {
  if (c < 0 || c >= jp.num_locations()) throw IndexError("location index out of range");
  const Scalar a = jp.location(c);
  if (!(a > 0)) throw NumericError("specialization undefined for a location with zero mass");
  Scalar kl = 0;
  for (Index i = 0; i < jp.num_activities(); ++i)
    kl += detail::xlogx_ratio(jp.p(c, i) / a, jp.activity(i));
  return kl;
}

template <typename Scalar>
Scalar codependence(const ColocDistribution<Scalar>& d, Index i) {
  if (i < 0 || i >= d.size()) throw IndexError("activity index out of range");
  const Scalar a = d.marginal(i);
  if (!(a > 0)) throw NumericError("co-dependence undefined for an activity with zero mass");
  Scalar kl = 0;
  for (Index j = 0; j < d.size(); ++j) kl += detail::xlogx_ratio(d.p(i, j) / a, d.marginal(j));
  return kl;
}

/// MI(C, X) = Σ p_ci PMI(p_ci), in nats.
template <typename Scalar>
Scalar mutual_information_location(const JointProbEstimate<Scalar>& jp) {
  Scalar mi = 0;
  for (Index i = 0; i < jp.num_activities(); ++i)
    for (Index c = 0; c < jp.num_locations(); ++c)
      mi += detail::xlogx_ratio(jp.p(c, i), jp.location(c) * jp.activity(i));
  return mi;
}

template <typename Scalar>
Scalar mutual_information_location(const Posterior<Scalar>& post,
                                   const AnalysisOptions& opts = {}) {
  return mutual_information_location(point_estimates(post)) * nats_to<Scalar>(opts.log_base);
}

/// MI(X1, X2) = Σ p_ij PMI(p_ij), in nats.
template <typename Scalar>
Scalar mutual_information_coloc(const ColocDistribution<Scalar>& d) {
  Scalar mi = 0;
  for (Index j = 0; j < d.size(); ++j)
    for (Index i = 0; i < d.size(); ++i)
      mi += detail::xlogx_ratio(d.p(i, j), d.marginal(i) * d.marginal(j));
  return mi;
}

template <typename Scalar>
Scalar mutual_information_coloc(const Posterior<Scalar>& post, const AnalysisOptions& opts = {}) {
  return mutual_information_coloc(coloc_distribution(point_estimates(post))) *
         nats_to<Scalar>(opts.log_base);
}

template <typename Scalar = double>
struct AggregateReport {
  std::vector<std::pair<std::string, AssocCell<Scalar>>> per_activity_localization;
  std::vector<std::pair<std::string, AssocCell<Scalar>>> per_location_specialization;
  std::vector<std::pair<std::string, AssocCell<Scalar>>> per_activity_codependence;
  Scalar mi_location = 0;
  Scalar mi_coloc = 0;
  bool has_location = false;  // localization, specialization, MI(C, X)
  bool has_coloc = false;     // co-dependence, MI(X1, X2)
  LogBase log_base = LogBase::nats;
  std::string prior;
};

enum class AggregateSet { all, location, coloc };

template <typename Scalar>
AggregateReport<Scalar> aggregate_report(const Posterior<Scalar>& post,
                                         const AnalysisOptions& opts = {},
                                         AggregateSet which = AggregateSet::all) {
  AggregateReport<Scalar> r;
  r.log_base = opts.log_base;
  r.prior = post.prior_description();
  r.has_location = which != AggregateSet::coloc;
  r.has_coloc = which != AggregateSet::location;
  if (r.has_location) {
    for (Index i = 0; i < post.num_activities(); ++i)
      r.per_activity_localization.emplace_back(post.activities()[i],
                                               localization(post, i, opts));
    for (Index c = 0; c < post.num_locations(); ++c)
      r.per_location_specialization.emplace_back(post.locations()[c],
                                                 specialization(post, c, opts));
    r.mi_location = mutual_information_location(post, opts);
  }
  if (r.has_coloc) {
    for (Index i = 0; i < post.num_activities(); ++i)
      r.per_activity_codependence.emplace_back(post.activities()[i], codependence(post, i, opts));
    r.mi_coloc = mutual_information_coloc(post, opts);
  }
  return r;
}

}  // namespace colocinfo
