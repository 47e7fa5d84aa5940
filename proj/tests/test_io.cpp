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

#include <json.hpp>
#include <regex>
#include <sstream>

#include "colocinfo/aggregates.hpp"
#include "colocinfo/assoc_colocation.hpp"
#include "colocinfo/bls.hpp"
#include "colocinfo/csv.hpp"
#include "colocinfo/errors.hpp"
#include "colocinfo/fixtures.hpp"
#include "colocinfo/serialize.hpp"
#include "colocinfo/svg_heatmap.hpp"
#include "support.hpp"

using namespace colocinfo;
using doctest::Approx;
using json = nlohmann::json;

namespace {

std::vector<std::vector<std::string>> records(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::string>> out;
  std::size_t n = 0;
  while (auto line = csv::read_line(in)) {
    ++n;
    if (line->empty() || (*line)[0] == '#') continue;
    out.push_back(csv::split_record(*line, n));
  }
  return out;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("CSV records") {
  CHECK(csv::split_record("a, b ,\"c,d\",\"e\"\"f\",", 1) ==
        std::vector<std::string>{"a", "b", "c,d", "e\"f", ""});
  CHECK_THROWS_AS(csv::split_record("a,\"b", 4), ParseError);
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(1.0 / 3) == "0.333333333333");
  CHECK(io::format_number(12345678.9) == "12345678.9");
  CHECK(io::format_number(2.5e-20) == "2.5e-20");
  CHECK(io::format_number(std::nan("")) == "nan");
  CHECK(io::format_number(-INFINITY) == "-inf");
}

TEST_CASE("location matrix CSV and JSON") {
  const auto post = testing::posterior(testing::matrix({{10, 0}, {0, 10}}));
  const auto mat = location_association_matrix(post);
  std::ostringstream os;
  io::write_assoc_csv(os, mat, {{"input", "m.csv"}});
  const auto text = os.str();
  CHECK(first_line(text) == "# kind=location_pmi log_base=nats estimator=dirichlet prior=uniform(1) input=m.csv");
  const auto rec = records(text);
  REQUIRE(rec.size() == 5);
  CHECK(rec[0] == std::vector<std::string>{"row_label", "col_label", "point", "mean", "sd"});
  CHECK(rec[1][0] == "L0");
  CHECK(rec[1][1] == "A0");
  CHECK(std::stod(rec[1][2]) == Approx(0.6061).epsilon(1e-4));
  CHECK(rec[1][2] == io::format_number(mat.point(0, 0)));

  const auto j = json::parse(io::assoc_json(mat));
  CHECK(j["metadata"]["log_base"] == "nats");
  CHECK(j["metadata"]["prior"] == "uniform(1)");
  CHECK(j["row_labels"] == json::array({"L0", "L1"}));
  CHECK(j["point"][0][1].get<double>() == Approx(-1.7918).epsilon(1e-4));
  CHECK(j["sd"][1][1].get<double>() == std::stod(io::format_number(mat.sd(1, 1))));
}

TEST_CASE("co-location CSV flags self-association cells") {
  const auto post = testing::posterior(fixtures::random_counts(3, 2, 1, 9, 1));
  const auto mat = colocation_association_matrix(post, {LogBase::bits});
  std::ostringstream os;
  io::write_assoc_csv(os, mat);
  CHECK(first_line(os.str()).find("log_base=bits") != std::string::npos);
  CHECK(first_line(os.str()).find("variance=exact") != std::string::npos);
  const auto rec = records(os.str());
  CHECK(rec[0].back() == "cell_kind");
  CHECK(rec[1].back() == "self-association");
  CHECK(rec[2].back() == "co-location");
  const auto j = json::parse(io::assoc_json(mat));
  CHECK(j["metadata"]["variance"] == "exact");
  CHECK(j["metadata"]["kind"] == "colocation_pmi");
}

TEST_CASE("aggregates CSV and JSON") {
  const auto post = testing::posterior(testing::matrix({{4, 1}, {1, 4}, {2, 2}}));
  const auto r = aggregate_report(post);
  std::ostringstream os;
  io::write_aggregates_csv(os, r);
  const auto rec = records(os.str());
  CHECK(rec[0] == std::vector<std::string>{"measure", "unit_label", "point", "mean", "sd"});
  CHECK(rec.size() == 1 + 2 + 3 + 1 + 2 + 1);
  CHECK(rec[1][0] == "localization");
  CHECK(rec[3][0] == "specialization");
  CHECK(rec[6] == std::vector<std::string>{"mi_location", "system", io::format_number(r.mi_location), "", ""});
  CHECK(rec[9][0] == "mi_coloc");
  const auto j = json::parse(io::aggregates_json(r));
  CHECK(j["localization"].size() == 2);
  CHECK(j["specialization"][2]["label"] == "L2");
  CHECK(j["mi_coloc"].get<double>() == Approx(r.mi_coloc).epsilon(1e-11));
  CHECK(j["metadata"]["log_base"] == "nats");
}

TEST_CASE("gamma and MC report serialization") {
  const auto m = testing::matrix({{10, 0}, {0, 10}});
  const auto g = eg_coagglomeration_matrix(ml_estimates<double>(m));
  std::ostringstream os;
  io::write_gamma_csv(os, m.activities(), g);
  const auto rec = records(os.str());
  CHECK(rec[1] == std::vector<std::string>{"A0", "A0", "1"});
  CHECK(json::parse(io::gamma_json(m.activities(), g))["gamma"][0][1].get<double>() == -1);

  const auto post = testing::posterior(m);
  const auto rep = run_validation(post, 500, 1, {Functional::p_ci});
  const auto j = json::parse(io::mc_report_json(rep));
  CHECK(j["n_draws"] == 500);
  CHECK(j["entries"].size() == 4);
  CHECK(j["entries"][0]["functional"] == "p_ci");
  CHECK(j["pass"].is_boolean());
}

TEST_CASE("diverging colour scale") {
  CHECK(svg::diverging_color(0) == "#d4d4d4");
  CHECK(svg::diverging_color(1) == "#b2182b");
  CHECK(svg::diverging_color(-1) == "#2166ac");
  CHECK(svg::diverging_color(7) == "#b2182b");
  CHECK(svg::diverging_color(NAN) == "#d4d4d4");
}

TEST_CASE("heatmap is self-contained and carries metadata") {
  const auto post = testing::posterior(fixtures::random_counts(5, 4, 1, 50, 3));
  const auto mat = colocation_association_matrix(post);
  const auto agg = aggregate_report(post, {}, AggregateSet::coloc);
  svg::HeatmapOptions o;
  o.metadata = {{"prior", "uniform(1)"}, {"note", "a--b"}};
  const auto s = svg::render_heatmap(mat, agg.per_activity_codependence, o);
  CHECK(s.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(s.find("href") == std::string::npos);
  CHECK(s.find("<!-- colocinfo heatmap prior=uniform(1) note=a- -b") != std::string::npos);
  CHECK(s.find("Co-dependence") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') > 20);
}

TEST_CASE("single-location heatmap is all grey") {
  const auto post = testing::posterior(testing::matrix({{5, 9, 2}}));
  const auto mat = colocation_association_matrix(post);
  const auto agg = aggregate_report(post, {}, AggregateSet::coloc);
  const auto s = svg::render_heatmap(mat, agg.per_activity_codependence);
  const std::regex fill("<rect x=\"[0-9.]+\" y=\"[0-9.]+\" width=\"22.00\" height=\"22.00\" fill=\"(#[0-9a-f]{6})\"");
  int cells = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), fill); it != std::sregex_iterator(); ++it) {
    ++cells;
    CHECK((*it)[1] == "#d4d4d4");
  }
  CHECK(cells == 9);
}

TEST_CASE("heatmap ordering and broken axis") {
  std::vector<std::pair<std::string, AssocCell<double>>> codep = {
      {"a", {0.1, 0.1, 0.01}}, {"b", {3.0, 3.0, 0.2}}, {"c", {0.2, 0.2, 0.02}}};
  CHECK(svg::heatmap_order(codep, false) == std::vector<Index>{0, 1, 2});
  CHECK(svg::heatmap_order(codep, true) == std::vector<Index>{1, 2, 0});

  AssocMatrix<double> mat;
  mat.kind = AssocKind::colocation;
  mat.row_labels = mat.col_labels = {"a", "b", "c"};
  mat.point = Grid<double>::Identity(3, 3) * 2.0;
  mat.point(0, 1) = mat.point(1, 0) = -0.4;
  mat.mean = mat.point;
  mat.sd = Grid<double>::Constant(3, 3, 0.1);
  const auto broken = svg::render_heatmap(mat, codep);
  CHECK(broken.find("broken axis") != std::string::npos);
  CHECK(broken.find("color_limit=0.4") != std::string::npos);
  codep[1].second.point = 0.3;
  CHECK(svg::render_heatmap(mat, codep).find("broken axis") == std::string::npos);
}

TEST_CASE("OES adapter helpers") {
  CHECK(bls::is_major_group_code("11-0000"));
  CHECK(bls::is_major_group_code("45-0000"));
  CHECK_FALSE(bls::is_major_group_code("00-0000"));
  CHECK_FALSE(bls::is_major_group_code("11-1000"));
  CHECK_FALSE(bls::is_major_group_code("11-1011"));
  CHECK(bls::parse_employment("1,230") == 1230);
  CHECK(bls::parse_employment(" 40 ") == 40);
  for (const char* s : {"*", "**", "#", "", "~"}) CHECK_FALSE(bls::parse_employment(s).has_value());
}

TEST_CASE("OES adapter ingests major groups") {
  const std::string file =
      "area,area_title_ignored,AREA_NAME,occ_code,OCC_TITLE,occ_group,tot_emp\n"
      "10180,x,\"Abilene, TX\",00-0000,All Occupations,total,\"66,090\"\n"
      "10180,x,\"Abilene, TX\",45-0000,Farming,major,120\n"
      "10180,x,\"Abilene, TX\",11-0000,Management,major,\"3,010\"\n"
      "10180,x,\"Abilene, TX\",11-1011,Chief Executives,detailed,50\n"
      "10420,x,\"Akron, OH\",11-0000,Management,major,**\n"
      "10420,x,\"Akron, OH\",45-0000,Farming,major,77\n";
  std::istringstream in(file);
  bls::IngestStats st;
  const auto m = bls::ingest_oes_csv(in, &st);
  CHECK(m.locations() == std::vector<std::string>{"Abilene, TX", "Akron, OH"});
  CHECK(m.activities() == std::vector<std::string>{"Management", "Farming"});
  CHECK(m(0, 0) == 3010);
  CHECK(m(0, 1) == 120);
  CHECK(m(1, 0) == 0);
  CHECK(m(1, 1) == 77);
  CHECK(st.suppressed == 1);
  CHECK(st.rows_kept == 3);
  CHECK(st.rows_read == 6);

  std::istringstream bad("AREA,OCC_CODE\n1,11-0000\n");
  CHECK_THROWS_AS(bls::ingest_oes_csv(bad), ParseError);
}
