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

#include "colocinfo/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "colocinfo/csv.hpp"

namespace colocinfo::io {

namespace {

using json = nlohmann::ordered_json;

json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  // round-trip through the 12-digit text so CSV and JSON agree
  return std::stod(format_number(x));
}

void write_header(std::ostream& out, const Metadata& meta) {
  out << '#';
  for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
  out << '\n';
}

json meta_object(const Metadata& meta) {
  json o = json::object();
  for (const auto& [k, v] : meta) o[k] = v;
  return o;
}

Metadata join(Metadata a, const Metadata& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

json cell_json(const AssocCell<double>& c) {
  return json{{"point", number(c.point)}, {"mean", number(c.mean)}, {"sd", number(c.sd)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Metadata assoc_metadata(const AssocMatrix<double>& m) {
  Metadata meta = {
      {"kind", m.kind == AssocKind::colocation ? "colocation_pmi" : "location_pmi"},
      {"log_base", to_string(m.log_base)},
      {"estimator", to_string(m.estimator)},
      {"prior", m.prior},
  };
  if (m.kind == AssocKind::colocation) meta.emplace_back("variance", m.variance_path);
  return meta;
}

void write_assoc_csv(std::ostream& out, const AssocMatrix<double>& m, const Metadata& extra) {
  write_header(out, join(assoc_metadata(m), extra));
  const bool coloc = m.kind == AssocKind::colocation;
  std::vector<std::string> head = {"row_label", "col_label", "point", "mean", "sd"};
  if (coloc) head.emplace_back("cell_kind");
  csv::write_record(out, head);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      std::vector<std::string> rec = {m.row_labels[r], m.col_labels[c],
                                      format_number(m.point(r, c)), format_number(m.mean(r, c)),
                                      format_number(m.sd(r, c))};
      if (coloc) rec.emplace_back(r == c ? "self-association" : "co-location");
      csv::write_record(out, rec);
    }
  }
}

std::string assoc_json(const AssocMatrix<double>& m, const Metadata& extra) {
  json j;
  j["metadata"] = meta_object(join(assoc_metadata(m), extra));
  j["row_labels"] = m.row_labels;
  j["col_labels"] = m.col_labels;
  for (const char* field : {"point", "mean", "sd"}) {
    const Grid<double>& g = field[0] == 'p' ? m.point : field[0] == 'm' ? m.mean : m.sd;
    json rows = json::array();
    for (Index r = 0; r < g.rows(); ++r) {
      json row = json::array();
      for (Index c = 0; c < g.cols(); ++c) row.push_back(number(g(r, c)));
      rows.push_back(std::move(row));
    }
    j[field] = std::move(rows);
  }
  if (m.kind == AssocKind::colocation) {
    j["diagonal_kind"] = "self-association (geographic concentration)";
  }
  return dump(j);
}

namespace {

Metadata aggregate_metadata(const AggregateReport<double>& r) {
  return {{"kind", "aggregates"}, {"log_base", to_string(r.log_base)}, {"prior", r.prior}};
}

}  // namespace

void write_aggregates_csv(std::ostream& out, const AggregateReport<double>& r,
                          const Metadata& extra) {
  write_header(out, join(aggregate_metadata(r), extra));
  csv::write_record(out, {"measure", "unit_label", "point", "mean", "sd"});
  auto rows = [&](const char* measure, const auto& list) {
    for (const auto& [label, c] : list)
      csv::write_record(out, {measure, label, format_number(c.point), format_number(c.mean),
                              format_number(c.sd)});
  };
  if (r.has_location) {
    rows("localization", r.per_activity_localization);
    rows("specialization", r.per_location_specialization);
    csv::write_record(out, {"mi_location", "system", format_number(r.mi_location), "", ""});
  }
  if (r.has_coloc) {
    rows("codependence", r.per_activity_codependence);
    csv::write_record(out, {"mi_coloc", "system", format_number(r.mi_coloc), "", ""});
  }
}

std::string aggregates_json(const AggregateReport<double>& r, const Metadata& extra) {
  json j;
  j["metadata"] = meta_object(join(aggregate_metadata(r), extra));
  auto list = [](const auto& items) {
    json a = json::array();
    for (const auto& [label, c] : items) {
      json o = {{"label", label}};
      o.update(cell_json(c));
      a.push_back(std::move(o));
    }
    return a;
  };
  if (r.has_location) {
    j["localization"] = list(r.per_activity_localization);
    j["specialization"] = list(r.per_location_specialization);
    j["mi_location"] = number(r.mi_location);
  }
  if (r.has_coloc) {
    j["codependence"] = list(r.per_activity_codependence);
    j["mi_coloc"] = number(r.mi_coloc);
  }
  return dump(j);
}

void write_gamma_csv(std::ostream& out, const std::vector<std::string>& labels,
                     const Grid<double>& gamma, const Metadata& extra) {
  write_header(out, join({{"kind", "eg_coagglomeration"}}, extra));
  csv::write_record(out, {"row_label", "col_label", "gamma"});
  for (Index r = 0; r < gamma.rows(); ++r)
    for (Index c = 0; c < gamma.cols(); ++c)
      csv::write_record(out, {labels[r], labels[c], format_number(gamma(r, c))});
}

std::string gamma_json(const std::vector<std::string>& labels, const Grid<double>& gamma,
                       const Metadata& extra) {
  json j;
  j["metadata"] = meta_object(join({{"kind", "eg_coagglomeration"}}, extra));
  j["labels"] = labels;
  json rows = json::array();
  for (Index r = 0; r < gamma.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < gamma.cols(); ++c) row.push_back(number(gamma(r, c)));
    rows.push_back(std::move(row));
  }
  j["gamma"] = std::move(rows);
  return dump(j);
}

std::string mc_report_json(const McReport& r, const Metadata& extra) {
  json j;
  j["metadata"] = meta_object(join({{"kind", "mc_validation"},
                                    {"label", "Monte Carlo validation (direct Dirichlet draws)"},
                                    {"estimator", to_string(r.estimator)},
                                    {"variance", r.variance_path},
                                    {"prior", r.prior},
                                    {"log_base", "nats"}},
                                   extra));
  j["n_draws"] = r.n_draws;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({
        {"functional", to_string(e.functional)},
        {"target", e.target},
        {"analytical_mean", number(e.analytical.mean)},
        {"analytical_sd", number(e.analytical.sd)},
        {"mc_mean", number(e.mc.mean)},
        {"mc_sd", number(e.mc.sd)},
        {"mc_standard_error", number(e.mc.standard_error_of_mean)},
        {"mc_nonfinite", e.mc.n_nonfinite},
        {"z", number(e.comparison.z)},
        {"sd_ratio", number(e.comparison.sd_ratio)},
        {"pass", e.comparison.pass},
        {"reason", e.comparison.reason},
    });
  }
  j["entries"] = std::move(entries);
  return dump(j);
}

}  // namespace colocinfo::io
