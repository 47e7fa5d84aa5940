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

#include "colocinfo/bls.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <unordered_map>
#include <vector>

#include "colocinfo/csv.hpp"
#include "colocinfo/errors.hpp"

namespace colocinfo::bls {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

bool is_major_group_code(const std::string& code) {
  const auto c = csv::trim(code);
  if (c.size() != 7 || c.substr(2) != "-0000") return false;
  if (!std::isdigit(static_cast<unsigned char>(c[0])) ||
      !std::isdigit(static_cast<unsigned char>(c[1]))) {
    return false;
  }
  return c.substr(0, 2) != "00";
}

std::optional<std::int64_t> parse_employment(const std::string& field) {
  std::string digits;
  for (char ch : csv::trim(field)) {
    if (ch == ',') continue;
    if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    digits += ch;
  }
  if (digits.empty() || digits.size() > 18) return std::nullopt;
  return std::stoll(digits);
}

CountMatrix ingest_oes_csv(std::istream& in, IngestStats* stats) {
  IngestStats st;
  std::size_t line_no = 0;
  std::optional<std::string> line;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (!csv::trim(*line).empty()) break;
  }
  if (!line) throw EmptyInputError("empty OES file");

  std::unordered_map<std::string, std::size_t> col;
  const auto header = csv::split_record(*line, line_no);
  for (std::size_t k = 0; k < header.size(); ++k) col.emplace(upper(csv::trim(header[k])), k);
  auto find = [&](const char* name) -> std::optional<std::size_t> {
    if (auto it = col.find(name); it != col.end()) return it->second;
    return std::nullopt;
  };
  const auto area = find("AREA_NAME") ? find("AREA_NAME") : find("AREA");
  const auto code = find("OCC_CODE");
  const auto title = find("OCC_TITLE");
  const auto group = find("OCC_GROUP");
  const auto emp = find("TOT_EMP");
  if (!area || !code || !title || !emp) {
    throw ParseError("OES header needs AREA_NAME (or AREA), OCC_CODE, OCC_TITLE and TOT_EMP",
                     line_no);
  }

  std::vector<std::string> locations;
  std::unordered_map<std::string, Index> loc_index;
  std::map<std::string, std::string> titles;  // code -> title, sorted by code
  struct Entry {
    Index c;
    std::string code;
    std::int64_t q;
  };
  std::vector<Entry> entries;
  std::map<std::pair<Index, std::string>, std::size_t> seen;

  const std::size_t need = std::max({*area, *code, *title, *emp, group.value_or(0)});
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (csv::trim(*line).empty()) continue;
    const auto f = csv::split_record(*line, line_no);
    if (f.size() <= need) {
      throw ParseError("expected at least " + std::to_string(need + 1) + " columns", line_no);
    }
    ++st.rows_read;
    const std::string occ(csv::trim(f[*code]));
    const bool major = group ? lower(csv::trim(f[*group])) == "major" : is_major_group_code(occ);
    if (!major || !is_major_group_code(occ)) continue;

    const std::string name(csv::trim(f[*area]));
    auto [it, fresh] = loc_index.try_emplace(name, static_cast<Index>(locations.size()));
    if (fresh) locations.push_back(name);
    titles.try_emplace(occ, std::string(csv::trim(f[*title])));
    if (!seen.try_emplace({it->second, occ}, line_no).second) {
      throw DuplicateError("duplicate row for '" + name + "' x " + occ, line_no);
    }
    const auto q = parse_employment(f[*emp]);
    if (!q) {
      ++st.suppressed;
      continue;
    }
    entries.push_back({it->second, occ, *q});
    ++st.rows_kept;
  }
  if (locations.empty()) throw EmptyInputError("no major-group rows in OES file");

  std::vector<std::string> activities;
  std::unordered_map<std::string, Index> act_index;
  for (const auto& [c, t] : titles) {
    act_index.emplace(c, static_cast<Index>(activities.size()));
    activities.push_back(t);
  }
  CountGrid grid = CountGrid::Zero(static_cast<Index>(locations.size()),
                                   static_cast<Index>(activities.size()));
  for (const auto& e : entries) grid(e.c, act_index.at(e.code)) = e.q;
  st.locations = static_cast<std::int64_t>(locations.size());
  st.activities = static_cast<std::int64_t>(activities.size());
  if (stats) *stats = st;
  return CountMatrix(std::move(locations), std::move(activities), std::move(grid));
}

}  // namespace colocinfo::bls
