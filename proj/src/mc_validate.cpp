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

#include "colocinfo/mc_validate.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "colocinfo/aggregates.hpp"
#include "colocinfo/assoc_colocation.hpp"
#include "colocinfo/errors.hpp"

namespace colocinfo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool is_pair(Functional f) {
  return f == Functional::p_ij || f == Functional::pmi_ij;
}
bool is_cell(Functional f) {
  return f == Functional::p_ci || f == Functional::pmi_ci;
}

// Welford running moments.
struct Running {
  std::int64_t n = 0;
  double mean = 0;
  double m2 = 0;
  std::int64_t nonfinite = 0;

  void push(double x) {
    if (!std::isfinite(x)) {
      ++nonfinite;
      return;
    }
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
};

}  // namespace

std::string to_string(Functional f) {
  switch (f) {
    case Functional::p_ci: return "p_ci";
    case Functional::pmi_ci: return "pmi_ci";
    case Functional::p_ij: return "p_ij";
    case Functional::pmi_ij: return "pmi_ij";
    case Functional::kl_codependence: return "kl_codependence";
    case Functional::kl_localization: return "kl_localization";
    case Functional::kl_specialization: return "kl_specialization";
  }
  return "unknown";
}

const std::vector<Functional>& all_functionals() {
  static const std::vector<Functional> all = {
      Functional::p_ci,           Functional::pmi_ci,          Functional::p_ij,
      Functional::pmi_ij,         Functional::kl_codependence, Functional::kl_localization,
      Functional::kl_specialization};
  return all;
}

Functional parse_functional(std::string_view s) {
  for (auto f : all_functionals())
    if (to_string(f) == s) return f;
  throw ConfigError("unknown functional '" + std::string(s) + "'");
}

void McConfig::validate() const {
  if (n_draws < 100) {
    throw ConfigError("n_draws must be at least 100 (got " + std::to_string(n_draws) + ")");
  }
}

std::vector<McTarget> all_targets(const Posterior<double>& post, Functional f) {
  std::vector<McTarget> out;
  const Index nc = post.num_locations(), ni = post.num_activities();
  if (is_cell(f)) {
    for (Index i = 0; i < ni; ++i)
      for (Index c = 0; c < nc; ++c) out.push_back({c, i});
  } else if (is_pair(f)) {
    for (Index j = 0; j < ni; ++j)
      for (Index i = 0; i <= j; ++i) out.push_back({i, j});
  } else if (f == Functional::kl_specialization) {
    for (Index c = 0; c < nc; ++c) out.push_back({c, 0});
  } else {
    for (Index i = 0; i < ni; ++i) out.push_back({i, 0});
  }
  return out;
}

std::string target_label(const Posterior<double>& post, Functional f, McTarget t) {
  if (is_cell(f)) return post.locations()[t.a] + " x " + post.activities()[t.b];
  if (is_pair(f)) return post.activities()[t.a] + " x " + post.activities()[t.b];
  if (f == Functional::kl_specialization) return post.locations()[t.a];
  return post.activities()[t.a];
}

DrawStream::DrawStream(const Posterior<double>& post, std::uint64_t seed, std::int64_t n_draws)
    : alpha_(post.smoothed()), seed_(seed), n_draws_(n_draws) {}

void DrawStream::draw_into(std::int64_t k, Grid<double>& out) const {
  std::mt19937_64 eng(splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(k))));
  out.resize(alpha_.rows(), alpha_.cols());
  double sum = 0;
  for (Index n = 0; n < alpha_.size(); ++n) {
    std::gamma_distribution<double> g(alpha_.data()[n], 1.0);
    out.data()[n] = g(eng);
    sum += out.data()[n];
  }
  out /= sum;
}

Grid<double> DrawStream::draw(std::int64_t k) const {
  Grid<double> g;
  draw_into(k, g);
  return g;
}

DrawStream sample_posterior(const Posterior<double>& post, const McConfig& cfg) {
  cfg.validate();
  return DrawStream(post, cfg.seed, cfg.n_draws);
}

namespace {

double eval_with(const JointProbEstimate<double>& jp, const ColocDistribution<double>* coloc,
                 Functional f, McTarget t) {
  switch (f) {
    case Functional::p_ci: return jp.p(t.a, t.b);
    case Functional::pmi_ci: return pmi_point(jp, t.a, t.b);
    case Functional::p_ij: return coloc->p(t.a, t.b);
    case Functional::pmi_ij: return coloc_pmi_point(*coloc, t.a, t.b);
    case Functional::kl_codependence: return codependence(*coloc, t.a);
    case Functional::kl_localization: return localization(jp, t.a);
    case Functional::kl_specialization: return specialization(jp, t.a);
  }
  return 0;
}

bool needs_coloc(Functional f) {
  return is_pair(f) || f == Functional::kl_codependence;
}

}  // namespace

double evaluate_functional(const Grid<double>& p, Functional f, McTarget t) {
  const auto jp = JointProbEstimate<double>::from_grid(p);
  if (needs_coloc(f)) {
    const auto coloc = coloc_distribution(jp);
    return eval_with(jp, &coloc, f, t);
  }
  return eval_with(jp, nullptr, f, t);
}

std::vector<McSummary> mc_statistics(const Posterior<double>& post, const McConfig& cfg,
                                     const std::vector<McTarget>& targets) {
  const auto stream = sample_posterior(post, cfg);
  std::vector<Running> acc(targets.size());
  Grid<double> p;
  for (std::int64_t k = 0; k < stream.size(); ++k) {
    stream.draw_into(k, p);
    const auto jp = JointProbEstimate<double>::from_grid(p);
    ColocDistribution<double> coloc;
    if (needs_coloc(cfg.functional)) coloc = coloc_distribution(jp);
    for (std::size_t n = 0; n < targets.size(); ++n)
      acc[n].push(eval_with(jp, &coloc, cfg.functional, targets[n]));
  }
  std::vector<McSummary> out;
  for (std::size_t n = 0; n < targets.size(); ++n) {
    const auto& a = acc[n];
    if (static_cast<double>(a.nonfinite) > 0.001 * static_cast<double>(cfg.n_draws)) {
      throw NumericError(std::to_string(a.nonfinite) + " of " + std::to_string(cfg.n_draws) +
                         " draws gave a non-finite " + to_string(cfg.functional) +
                         " for " + target_label(post, cfg.functional, targets[n]));
    }
    McSummary s;
    s.n_draws = a.n;
    s.n_nonfinite = a.nonfinite;
    s.mean = a.mean;
    s.sd = a.n > 1 ? std::sqrt(a.m2 / static_cast<double>(a.n - 1)) : 0.0;
    s.standard_error_of_mean = a.n > 0 ? s.sd / std::sqrt(static_cast<double>(a.n)) : 0.0;
    out.push_back(s);
  }
  return out;
}

McSummary mc_statistics(const Posterior<double>& post, const McConfig& cfg, McTarget target) {
  return mc_statistics(post, cfg, std::vector<McTarget>{target}).front();
}

AssocCell<double> analytical(const Posterior<double>& post, Functional f, McTarget t,
                             const AnalysisOptions& opts) {
  AnalysisOptions nats = opts;
  nats.log_base = LogBase::nats;
  switch (f) {
    case Functional::p_ci: {
      post.check_cell(t.a, t.b);
      const double p = post.smoothed(t.a, t.b) / post.total();
      return {p, p, std::sqrt(cell_variance(post, t.a, t.b)), LogBase::nats};
    }
    case Functional::pmi_ci: return location_pmi(post, t.a, t.b, nats);
    case Functional::p_ij: {
      const auto mean = coloc_posterior_mean(post);
      const auto plug = coloc_distribution(point_estimates(post));
      return {plug.p(t.a, t.b), mean.p(t.a, t.b), std::sqrt(var_pij(post, t.a, t.b, nats)),
              LogBase::nats};
    }
    case Functional::pmi_ij: return coloc_pmi(post, t.a, t.b, nats);
    case Functional::kl_codependence: return codependence(post, t.a, nats);
    case Functional::kl_localization: return localization(post, t.a, nats);
    case Functional::kl_specialization: return specialization(post, t.a, nats);
  }
  return {};
}

TolerancePolicy default_policy(Functional f) {
  switch (f) {
    case Functional::p_ci: return {4.0, 0, 0, 0.05};
    case Functional::pmi_ci: return {3.0, 0.8, 1.25, 0};
    case Functional::p_ij: return {3.0, 0, 0, 0.05};
    case Functional::pmi_ij: return {3.0, 0.9, 1.5, 0};
    default: return {3.0, 0.7, 1.5, 0};
  }
}

Comparison compare(const AssocCell<double>& analytical, const McSummary& mc,
                   const TolerancePolicy& policy) {
  Comparison r;
  const double diff = analytical.mean - mc.mean;
  if (diff == 0) {
    r.z = 0;
  } else if (mc.standard_error_of_mean > 0) {
    r.z = diff / mc.standard_error_of_mean;
  } else {
    r.z = diff > 0 ? INFINITY : -INFINITY;
  }
  if (mc.sd > 0) {
    r.sd_ratio = analytical.sd / mc.sd;
  } else {
    r.sd_ratio = analytical.sd == 0 ? 1.0 : INFINITY;
  }
  r.var_rel_error = std::abs(r.sd_ratio * r.sd_ratio - 1.0);

  char buf[160];
  if (!(std::abs(r.z) <= policy.max_abs_z)) {
    r.pass = false;
    std::snprintf(buf, sizeof buf, "mean z-score %.3g exceeds %.3g", r.z, policy.max_abs_z);
    r.reason = buf;
  } else if (policy.sd_ratio_hi > 0 &&
             !(r.sd_ratio >= policy.sd_ratio_lo && r.sd_ratio <= policy.sd_ratio_hi)) {
    r.pass = false;
    std::snprintf(buf, sizeof buf, "sd ratio %.4g outside [%.3g, %.3g]", r.sd_ratio,
                  policy.sd_ratio_lo, policy.sd_ratio_hi);
    r.reason = buf;
  } else if (policy.max_var_rel_error > 0 && !(r.var_rel_error <= policy.max_var_rel_error)) {
    r.pass = false;
    std::snprintf(buf, sizeof buf, "variance relative error %.4g exceeds %.3g", r.var_rel_error,
                  policy.max_var_rel_error);
    r.reason = buf;
  }
  return r;
}

bool McReport::pass() const {
  for (const auto& e : entries)
    if (!e.comparison.pass) return false;
  return true;
}

McReport run_validation(const Posterior<double>& post, std::int64_t n_draws, std::uint64_t seed,
                        const std::vector<Functional>& functionals, const AnalysisOptions& opts,
                        double corrupt_mean) {
  McReport report;
  report.n_draws = n_draws;
  report.seed = seed;
  report.prior = post.prior_description();
  report.estimator = opts.estimator;
  report.variance_path = use_exact_variance(post, opts) ? "exact" : "approx";
  for (auto f : functionals) {
    McConfig cfg{n_draws, seed, f};
    cfg.validate();
    const auto targets = all_targets(post, f);
    const auto mc = mc_statistics(post, cfg, targets);
    for (std::size_t n = 0; n < targets.size(); ++n) {
      auto an = analytical(post, f, targets[n], opts);
      an.mean += corrupt_mean;
      report.entries.push_back({f, target_label(post, f, targets[n]), an, mc[n],
                                compare(an, mc[n], default_policy(f))});
    }
  }
  return report;
}

}  // namespace colocinfo
