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
#include <string>
#include <string_view>
#include <vector>

#include "colocinfo/assoc_location.hpp"
#include "colocinfo/counts.hpp"
#include "colocinfo/options.hpp"
#include "colocinfo/posterior.hpp"

namespace colocinfo {

/// Quantity evaluated on every posterior draw.
enum class Functional {
  p_ci,
  pmi_ci,
  p_ij,
  pmi_ij,
  kl_codependence,
  kl_localization,
  kl_specialization,
};

std::string to_string(Functional f);
Functional parse_functional(std::string_view s);
const std::vector<Functional>& all_functionals();

struct McConfig {
  std::int64_t n_draws = 100000;
  std::uint64_t seed = 0;
  Functional functional = Functional::pmi_ci;

  /// Throws ConfigError when n_draws < 100.
  void validate() const;
};

struct McSummary {
  double mean = 0;
  double sd = 0;
  double standard_error_of_mean = 0;
  std::int64_t n_draws = 0;
  std::int64_t n_nonfinite = 0;
};

/// Cell (c, i) for p_ci and pmi_ci, pair (i, j) for p_ij and pmi_ij,
/// activity `a` for co-dependence and localization, location `a` for
/// specialization.
struct McTarget {
  Index a = 0;
  Index b = 0;
};

/// All targets of a functional on a posterior, in column-major order.
std::vector<McTarget> all_targets(const Posterior<double>& post, Functional f);
/// Human-readable label such as "L0 x A1".
std::string target_label(const Posterior<double>& post, Functional f, McTarget t);

/// i.i.d. draws from Dir(Q + α). Draw k depends only on (seed, k).
class DrawStream {
 public:
  DrawStream(const Posterior<double>& post, std::uint64_t seed, std::int64_t n_draws);

  std::int64_t size() const noexcept { return n_draws_; }
  Grid<double> draw(std::int64_t k) const;
  void draw_into(std::int64_t k, Grid<double>& out) const;

 private:
  Grid<double> alpha_;
  std::uint64_t seed_;
  std::int64_t n_draws_;
};

DrawStream sample_posterior(const Posterior<double>& post, const McConfig& cfg);

/// Exact functional of one probability grid (no approximation).
double evaluate_functional(const Grid<double>& p, Functional f, McTarget t);

/// Summaries for several targets from one shared set of draws. Throws
/// NumericError when more than 0.1% of draws give a non-finite value.
std::vector<McSummary> mc_statistics(const Posterior<double>& post, const McConfig& cfg,
                                     const std::vector<McTarget>& targets);
McSummary mc_statistics(const Posterior<double>& post, const McConfig& cfg, McTarget target);

/// Analytical mean and sd of the functional (point holds the plug-in value).
AssocCell<double> analytical(const Posterior<double>& post, Functional f, McTarget t,
                             const AnalysisOptions& opts = {});

struct TolerancePolicy {
  double max_abs_z = 3.0;
  double sd_ratio_lo = 0.0;  // analytical sd / MC sd
  double sd_ratio_hi = 0.0;  // 0 disables the sd check
  double max_var_rel_error = 0.0;  // |analytical var / MC var - 1|; 0 disables
};

TolerancePolicy default_policy(Functional f);

struct Comparison {
  double z = 0;
  double sd_ratio = 1;
  double var_rel_error = 0;
  bool pass = true;
  std::string reason;
};

Comparison compare(const AssocCell<double>& analytical, const McSummary& mc,
                   const TolerancePolicy& policy);

struct McReportEntry {
  Functional functional;
  std::string target;
  AssocCell<double> analytical;
  McSummary mc;
  Comparison comparison;
};

struct McReport {
  std::vector<McReportEntry> entries;
  std::int64_t n_draws = 0;
  std::uint64_t seed = 0;
  std::string prior;
  std::string variance_path;
  Estimator estimator = Estimator::dirichlet;
  bool pass() const;
};

/// Compares every target of each listed functional. `corrupt_mean` is added
/// to every analytical mean (negative-control hook; 0 in normal use).
McReport run_validation(const Posterior<double>& post, std::int64_t n_draws, std::uint64_t seed,
                        const std::vector<Functional>& functionals,
                        const AnalysisOptions& opts = {}, double corrupt_mean = 0.0);

}  // namespace colocinfo
