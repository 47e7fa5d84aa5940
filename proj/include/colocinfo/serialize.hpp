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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "colocinfo/aggregates.hpp"
#include "colocinfo/assoc_location.hpp"
#include "colocinfo/mc_validate.hpp"
#include "colocinfo/posterior.hpp"

namespace colocinfo::io {

/// Ordered key/value pairs written into output headers.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// 12 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

Metadata assoc_metadata(const AssocMatrix<double>& m);

/// `# key=value ...` line, then row_label,col_label,point,mean,sd (plus
/// cell_kind for co-location matrices).
void write_assoc_csv(std::ostream& out, const AssocMatrix<double>& m, const Metadata& extra = {});
std::string assoc_json(const AssocMatrix<double>& m, const Metadata& extra = {});

/// measure,unit_label,point,mean,sd. MI rows leave mean and sd empty.
void write_aggregates_csv(std::ostream& out, const AggregateReport<double>& r,
                          const Metadata& extra = {});
std::string aggregates_json(const AggregateReport<double>& r, const Metadata& extra = {});

void write_gamma_csv(std::ostream& out, const std::vector<std::string>& labels,
                     const Grid<double>& gamma, const Metadata& extra = {});
std::string gamma_json(const std::vector<std::string>& labels, const Grid<double>& gamma,
                       const Metadata& extra = {});

std::string mc_report_json(const McReport& r, const Metadata& extra = {});

}  // namespace colocinfo::io
