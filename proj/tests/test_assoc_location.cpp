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

#include <doctest.h>

#include <cmath>

#include "colocinfo/assoc_location.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/fixtures.hpp"
#include "support.hpp"

using namespace colocinfo;
using doctest::Approx;

namespace {

const AnalysisOptions kTaylor{LogBase::nats, Estimator::taylor};

}  // namespace

TEST_CASE("PMI point estimates") {
  const auto post = testing::posterior(testing::matrix({{10, 0}, {0, 10}}));
  const auto j = point_estimates(post);
  CHECK(pmi_point(j, 0, 0) == Approx(std::log(11.0 / 6)).epsilon(1e-14));
  CHECK(pmi_point(j, 0, 0) == Approx(0.6061).epsilon(1e-4));
  CHECK(pmi_point(j, 0, 1) == Approx(std::log(1.0 / 6)).epsilon(1e-14));
  CHECK(pmi_point(j, 0, 1) == Approx(-1.7918).epsilon(1e-4));
  CHECK_THROWS_AS(pmi_point(j, 0, 2), IndexError);

  const auto u = point_estimates(testing::posterior(testing::matrix({{7, 7, 7}, {7, 7, 7}})));
  for (Index c = 0; c < 2; ++c)
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(pmi_point(u, c, i)) < 1e-12);
}

TEST_CASE("PMI point properties on random fixtures") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto post = testing::posterior(fixtures::random_counts(3 + seed % 3, 2 + seed % 4, 0, 40, seed));
    const auto j = point_estimates(post);
    const auto grid = pmi_grid(j);
    const auto mat = location_association_matrix(post);
    for (Index c = 0; c < j.num_locations(); ++c) {
      for (Index i = 0; i < j.num_activities(); ++i) {
        const double v = pmi_point(j, c, i);
        CHECK(std::isfinite(v));
        CHECK(v <= -std::log(j.p(c, i)) + 1e-12);
        CHECK(grid(c, i) == Approx(v).epsilon(1e-13));
        CHECK(mat.point(c, i) == Approx(v).epsilon(1e-13));
        CHECK((std::abs(v) < 1e-12) == (std::abs(j.p(c, i) - j.location(c) * j.activity(i)) < 1e-12));
        CHECK(std::isfinite(mat.mean(c, i)));
        CHECK(mat.sd(c, i) >= 0);
      }
    }
  }
}

TEST_CASE("taylor estimator: posterior mean") {
  // single cell: zero variance
  const auto one = testing::posterior(testing::matrix({{5}}));
  const auto c1 = location_pmi(one, 0, 0, kTaylor);
  CHECK(c1.mean == c1.point);
  CHECK(c1.sd == 0);

  // [[5,5],[5,5]]: p = 1/4, Var = (1/4)(3/4)/25, factor -16 + 4 + 4
  const auto flat = testing::posterior(testing::matrix({{5, 5}, {5, 5}}));
  const auto c = location_pmi(flat, 0, 0, kTaylor);
  CHECK(std::abs(c.point) < 1e-12);
  CHECK(c.mean == Approx(0.0075 / 2 * -8).epsilon(1e-12));
  CHECK(c.mean < 0);
}

TEST_CASE("taylor estimator: posterior sd") {
  const auto flat = testing::posterior(testing::matrix({{5, 5}, {5, 5}}));
  CHECK(location_pmi(flat, 0, 1, kTaylor).sd == Approx(0).epsilon(1e-15));
  const auto post = testing::posterior(testing::matrix({{10, 0}, {0, 10}}));
  const double expected = std::sqrt(11.0 / 24 * 13.0 / 24 / 25) * std::abs(24.0 / 11 - 4);
  CHECK(pmi_posterior_sd(post, 0, 0, Estimator::taylor) == Approx(expected).epsilon(1e-12));
  CHECK(pmi_posterior_sd(post, 0, 0, Estimator::taylor) == Approx(0.181).epsilon(2e-3));
}

TEST_CASE("dirichlet estimator: exact log-moment mean") {
  using detail::digamma;
  const auto post = testing::posterior(testing::matrix({{10, 0}, {0, 10}}));
  CHECK(pmi_posterior_mean(post, 0, 0) ==
        Approx(digamma(11.0) - 2 * digamma(12.0) + digamma(24.0)).epsilon(1e-13));
  const auto one = testing::posterior(testing::matrix({{5}}));
  CHECK(location_pmi(one, 0, 0).mean == Approx(0).epsilon(1e-15));
  CHECK(location_pmi(one, 0, 0).sd == 0);
  // mean - point = O(1/q)
  const auto m = fixtures::random_counts(3, 3, 20, 60, 3);
  double prev = 1e9;
  for (std::int64_t k : {1, 10, 100}) {
    const auto p = testing::posterior(rescale(m, k));
    const auto cell = location_pmi(p, 1, 2);
    const double gap = std::abs(cell.mean - cell.point) * static_cast<double>(p.total());
    CHECK(gap < 10);
    if (k > 1) CHECK(std::abs(cell.mean - cell.point) < prev);
    prev = std::abs(cell.mean - cell.point);
  }
}

TEST_CASE("dirichlet estimator: sd equals full-covariance finite-difference delta method") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto m = fixtures::random_counts(3, 3, 5, 80, seed);
    const auto post = testing::posterior(m);
    const auto p = testing::to_mat(point_estimates(post).p);
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < 3; ++i) {
        const auto d = oracle::finite_difference_delta(
            p, post.total(), [&](const oracle::Mat& g) { return oracle::pmi(g, c, i); });
        CHECK(pmi_posterior_sd(post, c, i) == Approx(std::sqrt(d.var)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("log base") {
  const auto post = testing::posterior(testing::matrix({{10, 0}, {0, 10}}));
  const auto nats = location_pmi(post, 0, 0);
  const auto bits = location_pmi(post, 0, 0, {LogBase::bits});
  CHECK(bits.log_base == LogBase::bits);
  CHECK(bits.point == Approx(nats.point / std::log(2.0)).epsilon(1e-14));
  CHECK(bits.mean == Approx(nats.mean / std::log(2.0)).epsilon(1e-14));
  CHECK(bits.sd == Approx(nats.sd / std::log(2.0)).epsilon(1e-14));
  CHECK(location_association_matrix(post, {LogBase::bits}).log_base == LogBase::bits);
}

TEST_CASE("RCA") {
  const auto m = testing::matrix({{10, 0}, {0, 10}});
  CHECK(rca(m, 0, 0) == 2);
  CHECK(std::log(rca(m, 0, 0)) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(rca(m, 0, 1) == 0);
  CHECK(rca(testing::matrix({{3, 3}, {3, 3}}), 1, 0) == 1);
  CHECK_THROWS_AS(rca(testing::matrix({{1, 0}, {2, 0}}), 0, 1), UndefinedRcaError);
  CHECK_THROWS_AS(rca(m, 2, 0), IndexError);
}

TEST_CASE("log RCA equals ML PMI") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto m = fixtures::random_counts(4, 5, 0, 6, seed);
    const auto ml = ml_estimates(m);
    for (Index c = 0; c < 4; ++c)
      for (Index i = 0; i < 5; ++i) {
        if (m(c, i) == 0 || m.location_total(c) == 0 || m.activity_total(i) == 0) continue;
        CHECK(std::abs(std::log(rca(m, c, i)) - pmi_point(ml, c, i)) < 1e-12);
      }
  }
}

TEST_CASE("association matrix metadata") {
  const auto post = testing::posterior(testing::matrix({{1, 2, 3}, {4, 5, 6}}), 0.5);
  const auto mat = location_association_matrix(post, kTaylor);
  CHECK(mat.kind == AssocKind::location);
  CHECK(mat.rows() == 2);
  CHECK(mat.cols() == 3);
  CHECK(mat.row_labels == post.locations());
  CHECK(mat.col_labels == post.activities());
  CHECK(mat.prior == "uniform(0.5)");
  CHECK(mat.estimator == Estimator::taylor);
  const auto cell = location_pmi(post, 1, 2, kTaylor);
  CHECK(mat.cell(1, 2).mean == cell.mean);
  CHECK(mat.cell(1, 2).sd == cell.sd);
}
