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

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace colocinfo {

using Index = Eigen::Index;
using CountGrid = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Location × activity prevalence matrix q_ci.
///
/// Rows are locations, columns are activities. The constructor enforces the
/// invariants: matching label/grid shapes, unique labels on each axis, no
/// negative cell and a strictly positive total. Zero rows and columns are
/// allowed; `validate` reports them.
class CountMatrix {
 public:
  CountMatrix(std::vector<std::string> locations, std::vector<std::string> activities,
              CountGrid counts);

  const std::vector<std::string>& locations() const noexcept { return locations_; }
  const std::vector<std::string>& activities() const noexcept { return activities_; }
  const CountGrid& counts() const noexcept { return counts_; }

  Index num_locations() const noexcept { return counts_.rows(); }
  Index num_activities() const noexcept { return counts_.cols(); }

  std::int64_t operator()(Index c, Index i) const { return counts_(c, i); }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t location_total(Index c) const { return counts_.row(c).sum(); }
  std::int64_t activity_total(Index i) const { return counts_.col(i).sum(); }

  friend bool operator==(const CountMatrix& a, const CountMatrix& b) {
    return a.locations_ == b.locations_ && a.activities_ == b.activities_ &&
           a.counts_ == b.counts_;
  }

 private:
  std::vector<std::string> locations_;
  std::vector<std::string> activities_;
  CountGrid counts_;
  std::int64_t total_ = 0;
};

struct ValidationReport {
  std::vector<std::string> empty_locations;
  std::vector<std::string> empty_activities;
  std::int64_t total = 0;
  Index num_locations = 0;
  Index num_activities = 0;
};

enum class InputFormat { long_form, wide };

/// Reads `location,activity,count` CSV. Labels keep first-appearance order;
/// absent cells are zero.
CountMatrix parse_long_csv(std::istream& in);

/// Reads a wide matrix: first column holds location labels, remaining header
/// cells are activity labels.
CountMatrix parse_wide_csv(std::istream& in);

CountMatrix read_count_matrix(const std::filesystem::path& path, InputFormat format);

/// Writes every cell, zeros included, in row-major order.
void write_long_csv(std::ostream& out, const CountMatrix& m);
void write_wide_csv(std::ostream& out, const CountMatrix& m);

ValidationReport validate(const CountMatrix& m);

/// Multiplies every count by `k` (k >= 1). Throws RangeError on overflow.
CountMatrix rescale(const CountMatrix& m, std::int64_t k);

}  // namespace colocinfo
