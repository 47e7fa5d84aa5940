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

#include <cmath>

namespace colocinfo::detail {

// ψ(x) for x > 0: shift up to x >= 10, then the asymptotic series in 1/x².
template <typename Scalar>
Scalar digamma(Scalar x) {
  Scalar shift = 0;
  while (x < Scalar(10)) {
    shift -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  // Bernoulli terms B_2k / (2k) up to k = 7.
  const Scalar series =
      inv2 * (Scalar(1) / 12 -
              inv2 * (Scalar(1) / 120 -
                      inv2 * (Scalar(1) / 252 -
                              inv2 * (Scalar(1) / 240 -
                                      inv2 * (Scalar(1) / 132 -
                                              inv2 * (Scalar(691) / 32760 -
                                                      inv2 * (Scalar(1) / 12)))))));
  using std::log;
  return shift + log(x) - Scalar(0.5) * inv - series;
}

}  // namespace colocinfo::detail
