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

#include "colocinfo/fixtures.hpp"

#include <random>
#include <string>
#include <vector>

#include "colocinfo/errors.hpp"

namespace colocinfo::fixtures {

CountMatrix random_counts(Index rows, Index cols, std::int64_t lo, std::int64_t hi,
                          std::uint64_t seed) {
  if (rows < 1 || cols < 1 || lo < 0 || hi <= lo) {
    throw PreconditionError("random_counts needs rows, cols >= 1 and 0 <= lo < hi");
  }
  std::mt19937_64 eng(seed);
  const auto span = static_cast<std::uint64_t>(hi - lo);
  CountGrid g(rows, cols);
  for (Index c = 0; c < rows; ++c)
    for (Index i = 0; i < cols; ++i) g(c, i) = lo + static_cast<std::int64_t>(eng() % span);
  if (g.sum() == 0) g(0, 0) = 1;
  std::vector<std::string> locs, acts;
  for (Index c = 0; c < rows; ++c) locs.push_back("L" + std::to_string(c));
  for (Index i = 0; i < cols; ++i) acts.push_back("A" + std::to_string(i));
  return CountMatrix(std::move(locs), std::move(acts), std::move(g));
}

CountMatrix validation_5x5() { return random_counts(5, 5, 250, 1000, 20160531); }

CountMatrix validation_4x4() { return random_counts(4, 4, 100, 400, 4404); }

}  // namespace colocinfo::fixtures
