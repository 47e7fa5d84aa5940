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
#include <vector>

#include "colocinfo/counts.hpp"
#include "colocinfo/detail/special.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/options.hpp"
#include "colocinfo/posterior.hpp"

namespace colocinfo {

/// One association value: PMI at the posterior mean, the bias-corrected
/// posterior mean, and the posterior standard deviation.
template <typename Scalar = double>
struct AssocCell {
  Scalar point{};
  Scalar mean{};
  Scalar sd{};
  LogBase log_base = LogBase::nats;
};

/// Rescales a cell computed in nats.
template <typename Scalar>
AssocCell<Scalar> in_base(AssocCell<Scalar> cell, LogBase base) {
  const Scalar f = nats_to<Scalar>(base);
  return {cell.point * f, cell.mean * f, cell.sd * f, base};
}

enum class AssocKind { location, colocation };

/// Grid of association cells with labels and the settings that produced them.
template <typename Scalar = double>
struct AssocMatrix {
  AssocKind kind = AssocKind::location;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Grid<Scalar> point;
  Grid<Scalar> mean;
  Grid<Scalar> sd;
  LogBase log_base = LogBase::nats;
  Estimator estimator = Estimator::dirichlet;
  std::string prior;
  std::string variance_path;  // co-location only: "exact" or "approx"

  Index rows() const noexcept { return point.rows(); }
  Index cols() const noexcept { return point.cols(); }
  AssocCell<Scalar> cell(Index r, Index c) const {
    return {point(r, c), mean(r, c), sd(r, c), log_base};
  }
};

// PMI(p_ci) = log(p_ci / (p_c p_i)), in nats. Zero ML cells give -inf.
template <typename Scalar>
Scalar pmi_point(const JointProbEstimate<Scalar>& j, Index c, Index i) {
  if (c < 0 || c >= j.num_locations() || i < 0 || i >= j.num_activities()) {
    throw IndexError("cell (" + std::to_string(c) + ", " + std::to_string(i) + ") out of range");
  }
  using std::log;
  return log(j.p(c, i)) - log(j.location(c)) - log(j.activity(i));
}

/// Whole PMI grid of a joint estimate, in nats.
template <typename Scalar>
Grid<Scalar> pmi_grid(const JointProbEstimate<Scalar>& j) {
  return (j.p.array().log().colwise() - j.location.array().log()).rowwise() -
         j.activity.array().log().transpose();
}

/// Posterior mean of PMI(p_ci), in nats.
template <typename Scalar>
Scalar pmi_posterior_mean(const Posterior<Scalar>& post, Index c, Index i,
                          Estimator est = Estimator::dirichlet) {
  post.check_cell(c, i);
  const Scalar qt = post.total();
  if (est == Estimator::dirichlet) {
    using detail::digamma;
    return digamma(post.smoothed(c, i)) - digamma(post.location_marginals()(c)) -
           digamma(post.activity_marginals()(i)) + digamma(qt);
  }
  const Scalar p = post.smoothed(c, i) / qt;
  const Scalar pc = post.location_marginals()(c) / qt;
  const Scalar pi = post.activity_marginals()(i) / qt;
  using std::log;
  const Scalar var = dirichlet_component_variance(post.smoothed(c, i), qt);
  return log(p / (pc * pi)) +
         var / 2 * (-Scalar(1) / (p * p) + Scalar(1) / (pc * pc) + Scalar(1) / (pi * pi));
}

/// Posterior standard deviation of PMI(p_ci), in nats.
template <typename Scalar>
Scalar pmi_posterior_sd(const Posterior<Scalar>& post, Index c, Index i,
                        Estimator est = Estimator::dirichlet) {
  post.check_cell(c, i);
  const Scalar qt = post.total();
  const Scalar p = post.smoothed(c, i) / qt;
  const Scalar pc = post.location_marginals()(c) / qt;
  const Scalar pi = post.activity_marginals()(i) / qt;
  using std::abs;
  using std::sqrt;
  if (est == Estimator::taylor) {
    const Scalar var = dirichlet_component_variance(post.smoothed(c, i), qt);
    return sqrt(var) * abs(Scalar(1) / p - Scalar(1) / pc - Scalar(1) / pi);
  }
  // gᵀ Cov g with g the gradient of log p_ci - log p_c - log p_i; Σ p g = -1.
  const Scalar quad = Scalar(1) / p - Scalar(1) / pc - Scalar(1) / pi + 2 * p / (pc * pi) - 1;
  return sqrt(std::max(Scalar(0), quad / (qt + 1)));
}

template <typename Scalar>
AssocCell<Scalar> location_pmi(const Posterior<Scalar>& post, Index c, Index i,
                               const AnalysisOptions& opts = {}) {
  post.check_cell(c, i);
  using std::log;
  const Scalar qt = post.total();
  AssocCell<Scalar> cell;
  cell.point = log(post.smoothed(c, i) * qt /
                   (post.location_marginals()(c) * post.activity_marginals()(i)));
  cell.mean = pmi_posterior_mean(post, c, i, opts.estimator);
  cell.sd = pmi_posterior_sd(post, c, i, opts.estimator);
  return in_base(cell, opts.log_base);
}

/// Balassa's revealed comparative advantage (q_ci / q_c) / (q_i / q) on raw counts.
inline double rca(const CountMatrix& m, Index c, Index i) {
  if (c < 0 || c >= m.num_locations() || i < 0 || i >= m.num_activities()) {
    throw IndexError("cell (" + std::to_string(c) + ", " + std::to_string(i) + ") out of range");
  }
  const auto qc = m.location_total(c);
  const auto qi = m.activity_total(i);
  if (qc == 0 || qi == 0) {
    throw UndefinedRcaError("RCA undefined for '" + m.locations()[c] + "' x '" +
                            m.activities()[i] + "': zero marginal");
  }
  return (static_cast<double>(m(c, i)) / static_cast<double>(qc)) /
         (static_cast<double>(qi) / static_cast<double>(m.total()));
}

/// Every PMI(p_ci) cell of the posterior.
template <typename Scalar>
AssocMatrix<Scalar> location_association_matrix(const Posterior<Scalar>& post,
                                                const AnalysisOptions& opts = {}) {
  AssocMatrix<Scalar> out;
  out.kind = AssocKind::location;
  out.row_labels = post.locations();
  out.col_labels = post.activities();
  out.log_base = opts.log_base;
  out.estimator = opts.estimator;
  out.prior = post.prior_description();
  const Index nc = post.num_locations(), ni = post.num_activities();
  out.point.resize(nc, ni);
  out.mean.resize(nc, ni);
  out.sd.resize(nc, ni);
  for (Index i = 0; i < ni; ++i) {
    for (Index c = 0; c < nc; ++c) {
      const auto cell = location_pmi(post, c, i, opts);
      out.point(c, i) = cell.point;
      out.mean(c, i) = cell.mean;
      out.sd(c, i) = cell.sd;
    }
  }
  return out;
}

}  // namespace colocinfo
