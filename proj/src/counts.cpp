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

#include "colocinfo/counts.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "colocinfo/csv.hpp"
#include "colocinfo/errors.hpp"

namespace colocinfo {
namespace {

void require_unique(const std::vector<std::string>& labels, const char* axis) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw ShapeError(std::string("duplicate ") + axis + " label '" + l + "'");
    }
  }
}

std::int64_t parse_count(std::string_view text, std::size_t line) {
  text = csv::trim(text);
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("count '" + std::string(text) + "' is not an integer", line);
  }
  if (value < 0) throw ParseError("negative count " + std::to_string(value), line);
  return value;
}

// Assigns dense indices in first-appearance order.
class LabelIndex {
 public:
  Index get(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, static_cast<Index>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(labels_); }
  Index size() const { return static_cast<Index>(labels_.size()); }

 private:
  std::unordered_map<std::string, Index> index_;
  std::vector<std::string> labels_;
};

bool is_blank(const std::string& line) { return csv::trim(line).empty(); }

}  // namespace

CountMatrix::CountMatrix(std::vector<std::string> locations, std::vector<std::string> activities,
                         CountGrid counts)
    : locations_(std::move(locations)), activities_(std::move(activities)),
      counts_(std::move(counts)) {
  if (static_cast<Index>(locations_.size()) != counts_.rows() ||
      static_cast<Index>(activities_.size()) != counts_.cols()) {
    throw ShapeError("label count does not match count grid shape");
  }
  if (counts_.size() == 0) throw EmptyInputError("count matrix has no cells");
  require_unique(locations_, "location");
  require_unique(activities_, "activity");
  if ((counts_.array() < 0).any()) throw RangeError("negative count in prevalence matrix");
  std::int64_t total = 0;
  for (Index k = 0; k < counts_.size(); ++k) {
    if (__builtin_add_overflow(total, counts_.data()[k], &total)) {
      throw RangeError("total count overflows 64-bit integer");
    }
  }
  if (total <= 0) throw EmptyInputError("prevalence matrix total is zero");
  total_ = total;
}

CountMatrix parse_long_csv(std::istream& in) {
  std::size_t line_no = 0;
  std::optional<std::string> line;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (!is_blank(*line)) break;
  }
  if (!line) throw EmptyInputError("empty input");
  const auto header = csv::split_record(*line, line_no);
  if (header.size() != 3 || header[0] != "location" || header[1] != "activity" ||
      header[2] != "count") {
    throw ParseError("expected header 'location,activity,count'", line_no);
  }

  LabelIndex locs, acts;
  struct Entry {
    Index c, i;
    std::int64_t q;
  };
  std::vector<Entry> entries;
  std::map<std::pair<Index, Index>, std::size_t> first_line;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (is_blank(*line)) continue;
    const auto f = csv::split_record(*line, line_no);
    if (f.size() != 3) {
      throw ParseError("expected 3 columns, found " + std::to_string(f.size()), line_no);
    }
    const std::int64_t q = parse_count(f[2], line_no);
    const Index c = locs.get(f[0]);
    const Index i = acts.get(f[1]);
    auto [it, inserted] = first_line.try_emplace({c, i}, line_no);
    if (!inserted) {
      throw DuplicateError("duplicate (location, activity) = (" + f[0] + ", " + f[1] +
                               "), first seen on line " + std::to_string(it->second),
                           line_no);
    }
    entries.push_back({c, i, q});
  }
  if (entries.empty()) throw EmptyInputError("no data rows");

  CountGrid grid = CountGrid::Zero(locs.size(), acts.size());
  for (const auto& e : entries) grid(e.c, e.i) = e.q;
  return CountMatrix(locs.take(), acts.take(), std::move(grid));
}

CountMatrix parse_wide_csv(std::istream& in) {
  std::size_t line_no = 0;
  std::optional<std::string> line;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (!is_blank(*line)) break;
  }
  if (!line) throw EmptyInputError("empty input");
  const auto header = csv::split_record(*line, line_no);
  if (header.size() < 2) throw ParseError("wide header needs at least one activity", line_no);
  std::vector<std::string> activities(header.begin() + 1, header.end());

  std::vector<std::string> locations;
  std::vector<std::vector<std::int64_t>> rows;
  std::unordered_map<std::string, std::size_t> seen;
  while ((line = csv::read_line(in))) {
    ++line_no;
    if (is_blank(*line)) continue;
    const auto f = csv::split_record(*line, line_no);
    if (f.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(f.size()),
                       line_no);
    }
    auto [it, inserted] = seen.try_emplace(f[0], line_no);
    if (!inserted) {
      throw DuplicateError("duplicate location '" + f[0] + "', first seen on line " +
                               std::to_string(it->second),
                           line_no);
    }
    locations.push_back(f[0]);
    std::vector<std::int64_t> row;
    row.reserve(activities.size());
    for (std::size_t k = 1; k < f.size(); ++k) row.push_back(parse_count(f[k], line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyInputError("no data rows");

  CountGrid grid(static_cast<Index>(rows.size()), static_cast<Index>(activities.size()));
  for (Index c = 0; c < grid.rows(); ++c)
    for (Index i = 0; i < grid.cols(); ++i) grid(c, i) = rows[c][i];
  return CountMatrix(std::move(locations), std::move(activities), std::move(grid));
}

CountMatrix read_count_matrix(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return format == InputFormat::wide ? parse_wide_csv(in) : parse_long_csv(in);
}

void write_long_csv(std::ostream& out, const CountMatrix& m) {
  out << "location,activity,count\n";
  for (Index c = 0; c < m.num_locations(); ++c)
    for (Index i = 0; i < m.num_activities(); ++i)
      csv::write_record(out, {m.locations()[c], m.activities()[i], std::to_string(m(c, i))});
}

void write_wide_csv(std::ostream& out, const CountMatrix& m) {
  std::vector<std::string> header{"location"};
  header.insert(header.end(), m.activities().begin(), m.activities().end());
  csv::write_record(out, header);
  for (Index c = 0; c < m.num_locations(); ++c) {
    std::vector<std::string> row{m.locations()[c]};
    for (Index i = 0; i < m.num_activities(); ++i) row.push_back(std::to_string(m(c, i)));
    csv::write_record(out, row);
  }
}

ValidationReport validate(const CountMatrix& m) {
  ValidationReport r;
  r.total = m.total();
  r.num_locations = m.num_locations();
  r.num_activities = m.num_activities();
  for (Index c = 0; c < m.num_locations(); ++c)
    if (m.location_total(c) == 0) r.empty_locations.push_back(m.locations()[c]);
  for (Index i = 0; i < m.num_activities(); ++i)
    if (m.activity_total(i) == 0) r.empty_activities.push_back(m.activities()[i]);
  return r;
}

CountMatrix rescale(const CountMatrix& m, std::int64_t k) {
  if (k < 1) throw PreconditionError("rescale factor must be >= 1, got " + std::to_string(k));
  CountGrid grid = m.counts();
  for (Index n = 0; n < grid.size(); ++n) {
    if (__builtin_mul_overflow(grid.data()[n], k, &grid.data()[n])) {
      throw RangeError("rescaled count overflows 64-bit integer");
    }
  }
  return CountMatrix(m.locations(), m.activities(), std::move(grid));
}

}  // namespace colocinfo
