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
#include <cmath>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "colocinfo/counts.hpp"
#include "colocinfo/errors.hpp"

namespace colocinfo {

template <typename Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dirichlet pseudocounts α_ci, either one value broadcast to every cell or a
/// full grid.
template <typename Scalar = double>
class PriorSpec {
 public:
  static PriorSpec uniform(Scalar a) { return PriorSpec(a); }
  static PriorSpec from_grid(Grid<Scalar> alpha) { return PriorSpec(std::move(alpha)); }

  bool is_uniform() const noexcept { return std::holds_alternative<Scalar>(value_); }

  /// Materializes α for an N_c × N_i matrix. Throws ShapeError or PriorError.
  Grid<Scalar> pseudocounts(Index rows, Index cols) const {
    Grid<Scalar> alpha;
    if (const auto* a = std::get_if<Scalar>(&value_)) {
      alpha = Grid<Scalar>::Constant(rows, cols, *a);
    } else {
      alpha = std::get<Grid<Scalar>>(value_);
      if (alpha.rows() != rows || alpha.cols() != cols) {
        throw ShapeError("prior is " + std::to_string(alpha.rows()) + "x" +
                         std::to_string(alpha.cols()) + ", counts are " + std::to_string(rows) +
                         "x" + std::to_string(cols));
      }
    }
    for (Index k = 0; k < alpha.size(); ++k) {
      using std::isfinite;
      if (!(alpha.data()[k] > Scalar(0)) || !isfinite(alpha.data()[k])) {
        throw PriorError("pseudocounts must be positive and finite");
      }
    }
    return alpha;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(12);
    if (const auto* a = std::get_if<Scalar>(&value_)) {
      os << "uniform(" << static_cast<double>(*a) << ")";
    } else {
      const auto& g = std::get<Grid<Scalar>>(value_);
      os << "matrix(" << g.rows() << "x" << g.cols() << ",sum=" << static_cast<double>(g.sum())
         << ")";
    }
    return os.str();
  }

 private:
  explicit PriorSpec(Scalar a) : value_(a) {}
  explicit PriorSpec(Grid<Scalar> g) : value_(std::move(g)) {}
  std::variant<Scalar, Grid<Scalar>> value_;
};

/// Dirichlet posterior Dir(Q + α) over the joint location-activity distribution.
///
/// Holds the smoothed counts q̃_ci = q_ci + α_ci with cached marginals
/// q̃_c, q̃_i and the total q̃. Immutable once built.
template <typename Scalar = double>
class Posterior {
 public:
  Posterior(const CountMatrix& m, const PriorSpec<Scalar>& prior)
      : labels_(std::make_shared<Labels>(Labels{m.locations(), m.activities()})),
        prior_(prior.describe()) {
    smoothed_ = m.counts().template cast<Scalar>() +
                prior.pseudocounts(m.num_locations(), m.num_activities());
    row_ = smoothed_.rowwise().sum();
    col_ = smoothed_.colwise().sum().transpose();
    total_ = smoothed_.sum();
  }

  const Grid<Scalar>& smoothed() const noexcept { return smoothed_; }
  Scalar smoothed(Index c, Index i) const { return smoothed_(c, i); }
  const Vector<Scalar>& location_marginals() const noexcept { return row_; }
  const Vector<Scalar>& activity_marginals() const noexcept { return col_; }
  Scalar total() const noexcept { return total_; }

  Index num_locations() const noexcept { return smoothed_.rows(); }
  Index num_activities() const noexcept { return smoothed_.cols(); }
  const std::vector<std::string>& locations() const noexcept { return labels_->locations; }
  const std::vector<std::string>& activities() const noexcept { return labels_->activities; }
  const std::string& prior_description() const noexcept { return prior_; }

  void check_cell(Index c, Index i) const {
    if (c < 0 || c >= num_locations() || i < 0 || i >= num_activities()) {
      throw IndexError("cell (" + std::to_string(c) + ", " + std::to_string(i) +
                       ") out of range");
    }
  }
  void check_activity(Index i) const {
    if (i < 0 || i >= num_activities()) {
      throw IndexError("activity index " + std::to_string(i) + " out of range");
    }
  }
  void check_location(Index c) const {
    if (c < 0 || c >= num_locations()) {
      throw IndexError("location index " + std::to_string(c) + " out of range");
    }
  }

 private:
  struct Labels {
    std::vector<std::string> locations;
    std::vector<std::string> activities;
  };
  std::shared_ptr<const Labels> labels_;
  std::string prior_;
  Grid<Scalar> smoothed_;
  Vector<Scalar> row_;
  Vector<Scalar> col_;
  Scalar total_ = 0;
};

template <typename Scalar>
Posterior<Scalar> make_posterior(const CountMatrix& m, const PriorSpec<Scalar>& prior) {
  return Posterior<Scalar>(m, prior);
}

/// Joint probabilities p_ci with marginals p_c (rows) and p_i (columns).
///
/// Bayesian estimates are strictly inside (0, 1). Maximum-likelihood estimates
/// from `ml_estimates` may contain zeros.
template <typename Scalar = double>
struct JointProbEstimate {
  Grid<Scalar> p;
  Vector<Scalar> location;  // p_c
  Vector<Scalar> activity;  // p_i

  Index num_locations() const noexcept { return p.rows(); }
  Index num_activities() const noexcept { return p.cols(); }

  static JointProbEstimate from_grid(Grid<Scalar> grid) {
    JointProbEstimate j;
    j.location = grid.rowwise().sum();
    j.activity = grid.colwise().sum().transpose();
    j.p = std::move(grid);
    return j;
  }
};

/// Posterior means p̂_ci = q̃_ci / q̃.
template <typename Scalar>
JointProbEstimate<Scalar> point_estimates(const Posterior<Scalar>& post) {
  JointProbEstimate<Scalar> j;
  j.p = post.smoothed() / post.total();
  j.location = post.location_marginals() / post.total();
  j.activity = post.activity_marginals() / post.total();
  return j;
}

/// Shares q_ci / q without pseudocounts.
template <typename Scalar = double>
JointProbEstimate<Scalar> ml_estimates(const CountMatrix& m) {
  return JointProbEstimate<Scalar>::from_grid(m.counts().template cast<Scalar>() /
                                              static_cast<Scalar>(m.total()));
}

/// Posterior variance of a Dirichlet component with concentration `part` out of `total`.
template <typename Scalar>
Scalar dirichlet_component_variance(Scalar part, Scalar total) {
  const Scalar p = part / total;
  return p * (Scalar(1) - p) / (total + Scalar(1));
}

/// Var[p_ci | Q, α].
template <typename Scalar>
Scalar cell_variance(const Posterior<Scalar>& post, Index c, Index i) {
  post.check_cell(c, i);
  return dirichlet_component_variance(post.smoothed(c, i), post.total());
}

}  // namespace colocinfo
