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

#include <string>
#include <vector>

#include "colocinfo/counts.hpp"
#include "colocinfo/posterior.hpp"
#include "oracle/brute_force.hpp"

namespace testing {

inline colocinfo::CountMatrix matrix(const std::vector<std::vector<std::int64_t>>& rows) {
  using colocinfo::Index;
  const Index nr = static_cast<Index>(rows.size());
  const Index nc = static_cast<Index>(rows.front().size());
  colocinfo::CountGrid g(nr, nc);
  std::vector<std::string> locs, acts;
  for (Index c = 0; c < nr; ++c) {
    locs.push_back("L" + std::to_string(c));
    for (Index i = 0; i < nc; ++i) g(c, i) = rows[c][i];
  }
  for (Index i = 0; i < nc; ++i) acts.push_back("A" + std::to_string(i));
  return colocinfo::CountMatrix(locs, acts, g);
}

inline oracle::Mat to_mat(const colocinfo::CountMatrix& m) {
  oracle::Mat out(m.num_locations(), oracle::Vec(m.num_activities()));
  for (colocinfo::Index c = 0; c < m.num_locations(); ++c)
    for (colocinfo::Index i = 0; i < m.num_activities(); ++i)
      out[c][i] = static_cast<double>(m(c, i));
  return out;
}

template <typename Derived>
oracle::Mat to_mat(const Eigen::MatrixBase<Derived>& g) {
  oracle::Mat out(g.rows(), oracle::Vec(g.cols()));
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) out[r][c] = static_cast<double>(g(r, c));
  return out;
}

inline colocinfo::Posterior<double> posterior(const colocinfo::CountMatrix& m, double alpha = 1.0) {
  return colocinfo::Posterior<double>(m, colocinfo::PriorSpec<double>::uniform(alpha));
}

}  // namespace testing
