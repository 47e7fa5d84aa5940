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

#include <cstdint>

#include "colocinfo/counts.hpp"

namespace colocinfo::fixtures {

/// Counts drawn uniformly from [lo, hi) with mt19937_64(seed); labels L0.., A0...
CountMatrix random_counts(Index rows, Index cols, std::int64_t lo, std::int64_t hi,
                          std::uint64_t seed);

/// Seeded 5×5 matrix with counts in [250, 1000).
CountMatrix validation_5x5();
/// Seeded 4×4 matrix with counts in [100, 400).
CountMatrix validation_4x4();

}  // namespace colocinfo::fixtures
