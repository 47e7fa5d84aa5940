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

// colocinfo: command-line front end.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "colocinfo/aggregates.hpp"
#include "colocinfo/assoc_colocation.hpp"
#include "colocinfo/assoc_location.hpp"
#include "colocinfo/bls.hpp"
#include "colocinfo/counts.hpp"
#include "colocinfo/csv.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/fixtures.hpp"
#include "colocinfo/mc_validate.hpp"
#include "colocinfo/posterior.hpp"
#include "colocinfo/serialize.hpp"
#include "colocinfo/svg_heatmap.hpp"

namespace fs = std::filesystem;
using namespace colocinfo;

namespace {

enum Exit { kOk = 0, kIo = 1, kParse = 2, kValidation = 3, kNumeric = 4, kMcFail = 5 };

struct RunConfig {
  std::string input;
  std::string input_format = "long";
  std::string alpha = "1";
  std::string log_base = "nats";
  std::string estimator = "dirichlet";
  std::string variance = "automatic";
  Index approx_threshold = 10000;
  std::int64_t mc_draws = 100000;
  std::uint64_t seed = 1;
  std::string functionals;
  std::vector<std::string> formats;
  std::string out;
  std::string order = "input";
  bool gamma = false;
  double corrupt = 0;
};

struct OutputFile {
  std::string name;
  std::string content;
};

std::string output_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("COLOCINFO_OUT"); env && *env) return env;
  return ".";
}

// All files are staged as temporaries first, then renamed into place.
void write_all(const fs::path& dir, const std::vector<OutputFile>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  std::vector<fs::path> staged;
  auto cleanup = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  const std::string suffix = ".tmp." + std::to_string(::getpid());
  for (const auto& f : files) {
    const fs::path tmp = dir / (f.name + suffix);
    std::ofstream os(tmp, std::ios::binary);
    staged.push_back(tmp);
    os << f.content;
    os.close();
    if (!os) {
      cleanup();
      throw IoError("cannot write " + tmp.string());
    }
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    fs::rename(staged[k], dir / files[k].name, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot rename into " + (dir / files[k].name).string() + ": " + ec.message());
    }
  }
  for (const auto& f : files) std::cout << (dir / f.name).string() << '\n';
}

InputFormat input_format(const std::string& s) {
  if (s == "long") return InputFormat::long_form;
  if (s == "wide") return InputFormat::wide;
  throw ConfigError("unknown input format '" + s + "' (expected long or wide)");
}

bool wants(const RunConfig& cfg, const char* fmt) {
  for (const auto& f : cfg.formats)
    if (f == fmt) return true;
  return false;
}

void check_formats(const RunConfig& cfg, bool svg_allowed) {
  if (cfg.formats.empty()) throw ConfigError("--format needs at least one of csv, json, svg");
  for (const auto& f : cfg.formats) {
    if (f == "csv" || f == "json" || (f == "svg" && svg_allowed)) continue;
    throw ConfigError("unsupported output format '" + f + "'");
  }
}

// Wide CSV of real pseudocounts, reordered to the count matrix labels.
PriorSpec<double> read_prior_grid(const std::string& path, const CountMatrix& m) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open prior file " + path);
  std::size_t line_no = 0;
  std::optional<std::string> line = csv::read_line(in);
  ++line_no;
  if (!line) throw EmptyInputError("empty prior file");
  const auto header = csv::split_record(*line, line_no);
  std::unordered_map<std::string, Index> act;
  for (Index i = 0; i < m.num_activities(); ++i) act.emplace(m.activities()[i], i);
  std::unordered_map<std::string, Index> loc;
  for (Index c = 0; c < m.num_locations(); ++c) loc.emplace(m.locations()[c], c);
  std::vector<Index> col_of;
  for (std::size_t k = 1; k < header.size(); ++k) {
    auto it = act.find(header[k]);
    if (it == act.end()) throw ShapeError("prior activity '" + header[k] + "' not in counts");
    col_of.push_back(it->second);
  }
  if (static_cast<Index>(col_of.size()) != m.num_activities()) {
    throw ShapeError("prior must list every activity exactly once");
  }
  Grid<double> g = Grid<double>::Constant(m.num_locations(), m.num_activities(), -1.0);
  Index rows = 0;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (csv::trim(*line).empty()) continue;
    const auto f = csv::split_record(*line, line_no);
    if (f.size() != header.size()) throw ParseError("ragged prior row", line_no);
    auto it = loc.find(f[0]);
    if (it == loc.end()) throw ShapeError("prior location '" + f[0] + "' not in counts");
    for (std::size_t k = 1; k < f.size(); ++k) {
      char* end = nullptr;
      const double v = std::strtod(f[k].c_str(), &end);
      if (f[k].empty() || *end != '\0') throw ParseError("bad pseudocount '" + f[k] + "'", line_no);
      g(it->second, col_of[k - 1]) = v;
    }
    ++rows;
  }
  if (rows != m.num_locations()) throw ShapeError("prior must list every location exactly once");
  return PriorSpec<double>::from_grid(std::move(g));
}

PriorSpec<double> prior_from(const std::string& alpha, const CountMatrix& m) {
  char* end = nullptr;
  const double a = std::strtod(alpha.c_str(), &end);
  if (!alpha.empty() && *end == '\0') {
    if (!(a > 0)) throw PriorError("--alpha must be positive");
    return PriorSpec<double>::uniform(a);
  }
  return read_prior_grid(alpha, m);
}

AnalysisOptions options_from(const RunConfig& cfg) {
  AnalysisOptions o;
  o.log_base = parse_log_base(cfg.log_base);
  o.estimator = parse_estimator(cfg.estimator);
  o.variance = parse_variance_method(cfg.variance);
  if (cfg.approx_threshold < 0) throw ConfigError("--approx-threshold must be nonnegative");
  o.approx_threshold = cfg.approx_threshold;
  return o;
}

io::Metadata run_metadata(const std::string& command, const RunConfig& cfg) {
  return {{"command", command}, {"input", fs::path(cfg.input).filename().string()},
          {"alpha", cfg.alpha}};
}

int analyze_location(const RunConfig& cfg) {
  check_formats(cfg, false);
  const auto opts = options_from(cfg);
  const auto m = read_count_matrix(cfg.input, input_format(cfg.input_format));
  const Posterior<double> post(m, prior_from(cfg.alpha, m));
  const auto assoc = location_association_matrix(post, opts);
  const auto agg = aggregate_report(post, opts, AggregateSet::location);
  const auto meta = run_metadata("analyze-location", cfg);

  std::vector<OutputFile> files;
  if (wants(cfg, "csv")) {
    std::ostringstream a, b;
    io::write_assoc_csv(a, assoc, meta);
    io::write_aggregates_csv(b, agg, meta);
    files.push_back({"location_pmi.csv", a.str()});
    files.push_back({"location_aggregates.csv", b.str()});
  }
  if (wants(cfg, "json")) {
    files.push_back({"location_pmi.json", io::assoc_json(assoc, meta)});
    files.push_back({"location_aggregates.json", io::aggregates_json(agg, meta)});
  }
  write_all(output_dir(cfg), files);
  return kOk;
}

int analyze_coloc(const RunConfig& cfg) {
  check_formats(cfg, true);
  const auto opts = options_from(cfg);
  if (cfg.order != "input" && cfg.order != "codependence") {
    throw ConfigError("--order must be input or codependence");
  }
  const auto m = read_count_matrix(cfg.input, input_format(cfg.input_format));
  const Posterior<double> post(m, prior_from(cfg.alpha, m));
  const auto assoc = colocation_association_matrix(post, opts);
  const auto agg = aggregate_report(post, opts, AggregateSet::coloc);
  auto meta = run_metadata("analyze-coloc", cfg);
  Grid<double> gamma;
  if (cfg.gamma) gamma = eg_coagglomeration_matrix(ml_estimates(m));

  std::vector<OutputFile> files;
  if (wants(cfg, "csv")) {
    std::ostringstream a, b;
    io::write_assoc_csv(a, assoc, meta);
    io::write_aggregates_csv(b, agg, meta);
    files.push_back({"coloc_pmi.csv", a.str()});
    files.push_back({"coloc_aggregates.csv", b.str()});
    if (cfg.gamma) {
      std::ostringstream g;
      io::write_gamma_csv(g, m.activities(), gamma, meta);
      files.push_back({"coloc_gamma.csv", g.str()});
    }
  }
  if (wants(cfg, "json")) {
    files.push_back({"coloc_pmi.json", io::assoc_json(assoc, meta)});
    files.push_back({"coloc_aggregates.json", io::aggregates_json(agg, meta)});
    if (cfg.gamma) files.push_back({"coloc_gamma.json", io::gamma_json(m.activities(), gamma, meta)});
  }
  if (wants(cfg, "svg")) {
    svg::HeatmapOptions h;
    h.order_by_codependence = cfg.order == "codependence";
    h.metadata = io::assoc_metadata(assoc);
    h.metadata.insert(h.metadata.end(), meta.begin(), meta.end());
    h.metadata.emplace_back("order", cfg.order);
    files.push_back({"coloc_heatmap.svg", svg::render_heatmap(assoc, agg.per_activity_codependence, h)});
  }
  write_all(output_dir(cfg), files);
  return kOk;
}

int validate_mc(const RunConfig& cfg) {
  const auto opts = options_from(cfg);
  McConfig probe;
  probe.n_draws = cfg.mc_draws;
  probe.validate();
  const CountMatrix m = cfg.input.empty()
                            ? fixtures::validation_5x5()
                            : read_count_matrix(cfg.input, input_format(cfg.input_format));
  const Posterior<double> post(m, prior_from(cfg.alpha, m));
  std::vector<Functional> fs_list;
  if (cfg.functionals.empty()) {
    fs_list = all_functionals();
  } else {
    std::stringstream ss(cfg.functionals);
    for (std::string tok; std::getline(ss, tok, ',');) fs_list.push_back(parse_functional(tok));
  }
  const auto report = run_validation(post, cfg.mc_draws, cfg.seed, fs_list, opts, cfg.corrupt);
  io::Metadata meta = {{"command", "validate-mc"},
                       {"input", cfg.input.empty() ? std::string("builtin:validation_5x5")
                                                   : fs::path(cfg.input).filename().string()},
                       {"alpha", cfg.alpha}};
  write_all(output_dir(cfg), {{"mc_validation.json", io::mc_report_json(report, meta)}});
  std::size_t failed = 0;
  for (const auto& e : report.entries) {
    if (e.comparison.pass) continue;
    ++failed;
    std::cerr << "FAIL " << to_string(e.functional) << " [" << e.target
              << "]: " << e.comparison.reason << '\n';
  }
  std::cerr << report.entries.size() - failed << " of " << report.entries.size()
            << " comparisons passed\n";
  return failed ? kMcFail : kOk;
}

int ingest_bls(const RunConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw IoError("cannot open " + cfg.input);
  bls::IngestStats st;
  const auto m = bls::ingest_oes_csv(in, &st);
  std::ostringstream os;
  write_long_csv(os, m);
  write_all(output_dir(cfg), {{"oes_major_groups.csv", os.str()}});
  std::cerr << st.locations << " locations, " << st.activities << " major groups, "
            << st.rows_kept << " cells kept, " << st.suppressed << " suppressed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-theoretic measures of economic geography"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("input", cfg.input, "Count matrix CSV");
    if (input_required) in->required();
    sub->add_option("--input-format", cfg.input_format, "long or wide")->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "Uniform pseudocount or path to a wide CSV of pseudocounts")
        ->capture_default_str();
    sub->add_option("--log-base", cfg.log_base, "nats or bits")->capture_default_str();
    sub->add_option("--estimator", cfg.estimator, "dirichlet or taylor")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output directory (default $COLOCINFO_OUT or .)");
  };

  auto* loc = app.add_subcommand("analyze-location", "PMI(p_ci), localization, specialization, MI(C,X)");
  common(loc, true);
  loc->add_option("--format", cfg.formats, "csv,json")->delimiter(',')->default_str("csv,json");

  auto* col = app.add_subcommand("analyze-coloc", "PMI(p_ij), co-dependence, MI(X1,X2), heatmap");
  common(col, true);
  col->add_option("--format", cfg.formats, "csv,json,svg")->delimiter(',')->default_str("csv,json,svg");
  col->add_option("--approx-threshold", cfg.approx_threshold,
                  "Largest N_c*N_i using the exact Var[p_ij]")->capture_default_str();
  col->add_option("--variance", cfg.variance, "automatic, exact or approx")->capture_default_str();
  col->add_option("--order", cfg.order, "Heatmap order: input or codependence")->capture_default_str();
  col->add_flag("--gamma", cfg.gamma, "Also write the Ellison-Glaeser co-agglomeration matrix");

  auto* mc = app.add_subcommand("validate-mc", "Compare analytical moments with Monte Carlo draws");
  common(mc, false);
  mc->add_option("--mc-draws", cfg.mc_draws, "Draws per functional (>= 100)")->capture_default_str();
  mc->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  mc->add_option("--approx-threshold", cfg.approx_threshold)->capture_default_str();
  mc->add_option("--variance", cfg.variance)->capture_default_str();
  mc->add_option("--functional", cfg.functionals, "Comma-separated subset (default all)");
  mc->add_option("--corrupt-analytical", cfg.corrupt)->group("");

  auto* ingest = app.add_subcommand("ingest-bls", "Convert an OES MSA CSV export to long-form counts");
  ingest->add_option("input", cfg.input, "OES CSV")->required();
  ingest->add_option("--out", cfg.out, "Output directory (default $COLOCINFO_OUT or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  if (cfg.formats.empty()) {
    cfg.formats = col->parsed() ? std::vector<std::string>{"csv", "json", "svg"}
                                : std::vector<std::string>{"csv", "json"};
  }

  try {
    if (loc->parsed()) return analyze_location(cfg);
    if (col->parsed()) return analyze_coloc(cfg);
    if (mc->parsed()) return validate_mc(cfg);
    if (ingest->parsed()) return ingest_bls(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
