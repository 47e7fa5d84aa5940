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
#include <string>
#include <string_view>

#include "colocinfo/counts.hpp"
#include "colocinfo/errors.hpp"

namespace colocinfo {

enum class LogBase { nats, bits };

/// How posterior means and standard deviations of PMI values are approximated.
///
/// `taylor` expands each PMI in its own cell only: the bias correction and
/// the delta-method variance use Var[p] of that cell, treating the marginals
/// as moving with it. `dirichlet` uses the full Dirichlet posterior
/// covariance: exact log-moments ψ(q̃_x) − ψ(q̃) where they exist, and the
/// delta method with Cov[p] = (diag p − p pᵀ) / (q̃ + 1).
enum class Estimator { dirichlet, taylor };

/// Which Var[p_ij] to use for co-location values.
enum class VarianceMethod { automatic, exact, approx };

struct AnalysisOptions {
  LogBase log_base = LogBase::nats;
  Estimator estimator = Estimator::dirichlet;
  VarianceMethod variance = VarianceMethod::automatic;
  // `automatic` uses the exact Var[p_ij] while N_c·N_i stays at or below this.
  Index approx_threshold = 10000;
};

inline std::string to_string(LogBase b) { return b == LogBase::bits ? "bits" : "nats"; }
inline std::string to_string(Estimator e) { return e == Estimator::taylor ? "taylor" : "dirichlet"; }
inline std::string to_string(VarianceMethod v) {
  switch (v) {
    case VarianceMethod::exact: return "exact";
    case VarianceMethod::approx: return "approx";
    default: return "automatic";
  }
}

inline LogBase parse_log_base(std::string_view s) {
  if (s == "nats") return LogBase::nats;
  if (s == "bits") return LogBase::bits;
  throw ConfigError("unknown log base '" + std::string(s) + "' (expected nats or bits)");
}

inline Estimator parse_estimator(std::string_view s) {
  if (s == "dirichlet") return Estimator::dirichlet;
  if (s == "taylor") return Estimator::taylor;
  throw ConfigError("unknown estimator '" + std::string(s) + "' (expected dirichlet or taylor)");
}

inline VarianceMethod parse_variance_method(std::string_view s) {
  if (s == "automatic") return VarianceMethod::automatic;
  if (s == "exact") return VarianceMethod::exact;
  if (s == "approx") return VarianceMethod::approx;
  throw ConfigError("unknown variance method '" + std::string(s) + "'");
}

/// Multiplier converting a value in nats to `base`.
template <typename Scalar>
Scalar nats_to(LogBase base) {
  using std::log;
  return base == LogBase::bits ? Scalar(1) / log(Scalar(2)) : Scalar(1);
}

}  // namespace colocinfo
