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

#include <algorithm>
#include <cmath>

#include "colocinfo/aggregates.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/fixtures.hpp"
#include "support.hpp"

using namespace colocinfo;
using doctest::Approx;

TEST_CASE("uniform matrix: every aggregate is zero") {
  const auto post = testing::posterior(testing::matrix({{6, 6, 6}, {6, 6, 6}, {6, 6, 6}, {6, 6, 6}}));
  for (Index i = 0; i < 3; ++i) {
    CHECK(std::abs(localization(post, i).point) < 1e-12);
    CHECK(std::abs(codependence(post, i).point) < 1e-12);
  }
  for (Index c = 0; c < 4; ++c) CHECK(std::abs(specialization(post, c).point) < 1e-12);
  CHECK(std::abs(mutual_information_location(post)) < 1e-12);
  CHECK(std::abs(mutual_information_coloc(post)) < 1e-12);
}

TEST_CASE("single location: co-dependence is zero") {
  const auto post = testing::posterior(testing::matrix({{5, 1, 30}}));
  for (Index i = 0; i < 3; ++i) CHECK(std::abs(codependence(post, i).point) < 1e-12);
  CHECK(std::abs(mutual_information_coloc(post)) < 1e-12);
}

TEST_CASE("ML segregation gives ln 2 everywhere") {
  const auto m = testing::matrix({{10, 0}, {0, 10}});
  const auto jp = ml_estimates<double>(m);
  const auto d = coloc_distribution(jp);
  const double ln2 = std::log(2.0);
  for (Index k = 0; k < 2; ++k) {
    CHECK(std::abs(localization(jp, k) - ln2) < 1e-12);
    CHECK(std::abs(specialization(jp, k) - ln2) < 1e-12);
    CHECK(std::abs(codependence(d, k) - ln2) < 1e-12);
  }
  CHECK(std::abs(mutual_information_location(jp) - ln2) < 1e-12);
  CHECK(std::abs(mutual_information_coloc(d) - ln2) < 1e-12);
}

TEST_CASE("aggregates match brute-force sums") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto m = fixtures::random_counts(2 + seed % 4, 2 + seed % 3, 0, 20, seed);
    const auto post = testing::posterior(m);
    const auto p = testing::to_mat(point_estimates(post).p);
    const auto pij = oracle::coloc(p);
    for (Index i = 0; i < m.num_activities(); ++i) {
      CHECK(std::abs(localization(post, i).point - oracle::localization(p, i)) < 1e-12);
      CHECK(std::abs(codependence(post, i).point - oracle::codependence(pij, i)) < 1e-12);
    }
    for (Index c = 0; c < m.num_locations(); ++c)
      CHECK(std::abs(specialization(post, c).point - oracle::specialization(p, c)) < 1e-12);
    CHECK(std::abs(mutual_information_location(post) - oracle::mutual_information(p)) < 1e-12);
    CHECK(std::abs(mutual_information_coloc(post) - oracle::mutual_information(pij)) < 1e-12);

    // ML path with zero cells
    const auto ml = ml_estimates<double>(m);
    const auto pm = testing::to_mat(ml.p);
    CHECK(std::abs(mutual_information_location(ml) - oracle::mutual_information(pm)) < 1e-12);
    CHECK(std::abs(mutual_information_coloc(coloc_distribution(ml)) -
                   oracle::mutual_information(oracle::coloc(pm))) < 1e-12);
  }
}

TEST_CASE("decomposition identities and bounds") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto m = fixtures::random_counts(2 + seed % 5, 2 + seed % 4, 0, 100, seed);
    const auto post = testing::posterior(m);
    const auto jp = point_estimates(post);
    const auto r = aggregate_report(post);
    double by_activity = 0, by_location = 0, by_codep = 0;
    for (Index i = 0; i < m.num_activities(); ++i) {
      by_activity += jp.activity(i) * r.per_activity_localization[i].second.point;
      by_codep += jp.activity(i) * r.per_activity_codependence[i].second.point;
      CHECK(r.per_activity_localization[i].second.point >= -1e-12);
      CHECK(r.per_activity_codependence[i].second.point >= -1e-12);
    }
    for (Index c = 0; c < m.num_locations(); ++c) {
      by_location += jp.location(c) * r.per_location_specialization[c].second.point;
      CHECK(r.per_location_specialization[c].second.point >= -1e-12);
    }
    CHECK(std::abs(r.mi_location - by_activity) < 1e-10);
    CHECK(std::abs(r.mi_location - by_location) < 1e-10);
    CHECK(std::abs(r.mi_coloc - by_codep) < 1e-10);
    CHECK(r.mi_location >= -1e-12);
    CHECK(r.mi_coloc >= -1e-12);
    const double bound = std::log(static_cast<double>(std::min(m.num_locations(), m.num_activities())));
    CHECK(r.mi_location <= bound + 1e-12);
  }
}

TEST_CASE("second-order moments equal finite-difference delta method") {
  const auto m = fixtures::random_counts(3, 3, 10, 60, 42);
  const auto post = testing::posterior(m);
  const auto p = testing::to_mat(point_estimates(post).p);
  auto check = [&](const AssocCell<double>& cell, const std::function<double(const oracle::Mat&)>& f) {
    const auto d = oracle::finite_difference_delta(p, post.total(), f);
    CHECK(cell.sd == Approx(std::sqrt(d.var)).epsilon(1e-6));
    CHECK(cell.mean - cell.point == Approx(d.mean_shift).epsilon(1e-4));
  };
  for (std::size_t i = 0; i < 3; ++i) {
    check(localization(post, i), [i](const oracle::Mat& g) { return oracle::localization(g, i); });
    check(specialization(post, i), [i](const oracle::Mat& g) { return oracle::specialization(g, i); });
    check(codependence(post, i),
          [i](const oracle::Mat& g) { return oracle::codependence(oracle::coloc(g), i); });
  }
}

TEST_CASE("co-dependence sd") {
  CHECK(codependence_sd(testing::posterior(testing::matrix({{12}})), 0) == 0);
  const auto post = testing::posterior(fixtures::random_counts(4, 4, 10, 50, 8));
  for (Index i = 0; i < 4; ++i) {
    CHECK(codependence_sd(post, i) > 0);
    CHECK(codependence_sd(post, i) == codependence(post, i).sd);
  }
  CHECK_THROWS_AS(codependence(post, 4), IndexError);
  CHECK_THROWS_AS(localization(post, -1), IndexError);
  CHECK_THROWS_AS(specialization(post, 4), IndexError);
}

TEST_CASE("ML aggregates undefined for empty rows or columns") {
  const auto ml = ml_estimates<double>(testing::matrix({{3, 0}, {2, 0}}));
  CHECK_THROWS_AS(localization(ml, 1), NumericError);
  CHECK_NOTHROW(localization(ml, 0));
  const auto ml2 = ml_estimates<double>(testing::matrix({{0, 0}, {2, 1}}));
  CHECK_THROWS_AS(specialization(ml2, 0), NumericError);
}

TEST_CASE("report contents and log base") {
  const auto post = testing::posterior(fixtures::random_counts(3, 2, 1, 9, 3));
  const auto nats = aggregate_report(post);
  const auto bits = aggregate_report(post, {LogBase::bits});
  CHECK(nats.per_activity_localization.size() == 2);
  CHECK(nats.per_location_specialization.size() == 3);
  CHECK(nats.per_activity_codependence.size() == 2);
  CHECK(nats.per_activity_localization[1].first == "A1");
  CHECK(bits.mi_location == Approx(nats.mi_location / std::log(2.0)).epsilon(1e-14));
  CHECK(bits.per_activity_codependence[0].second.sd ==
        Approx(nats.per_activity_codependence[0].second.sd / std::log(2.0)).epsilon(1e-14));
  const auto loc = aggregate_report(post, {}, AggregateSet::location);
  CHECK(loc.has_location);
  CHECK_FALSE(loc.has_coloc);
  CHECK(loc.per_activity_codependence.empty());
}
