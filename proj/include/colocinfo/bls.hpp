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
#include <iosfwd>
#include <optional>
#include <string>

#include "colocinfo/counts.hpp"

namespace colocinfo::bls {

struct IngestStats {
  std::int64_t rows_read = 0;
  std::int64_t rows_kept = 0;
  std::int64_t suppressed = 0;  // major-group rows without a usable employment value
  std::int64_t locations = 0;
  std::int64_t activities = 0;
};

/// True for an OES major group code "NN-0000" other than the all-occupations total.
bool is_major_group_code(const std::string& code);

/// Employment field to a count; nullopt for suppression markers ("*", "**",
/// "#", "~", empty). Thousands separators are accepted.
std::optional<std::int64_t> parse_employment(const std::string& field);

/// CSV export of the OES MSA table to a location × major-group matrix of
/// total employment. Header names are matched case-insensitively; required
/// columns AREA_NAME (or AREA), OCC_CODE, OCC_TITLE, TOT_EMP; OCC_GROUP is
/// used when present. Locations keep file order, activities are sorted by
/// code. Suppressed cells become 0 counts.
CountMatrix ingest_oes_csv(std::istream& in, IngestStats* stats = nullptr);

}  // namespace colocinfo::bls
