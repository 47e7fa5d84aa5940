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

#include <string>
#include <utility>
#include <vector>

#include "colocinfo/assoc_location.hpp"

namespace colocinfo::svg {

struct HeatmapOptions {
  bool order_by_codependence = false;
  // colour saturation |value|; <= 0 means the largest off-diagonal |point|
  double color_limit = 0;
  std::string title = "Co-location PMI";
  // key=value pairs recorded in a leading comment
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// #rrggbb on a blue-grey-red scale: t in [-1, 1], 0 is neutral grey.
std::string diverging_color(double t);

/// Row/column order used by the heatmap.
std::vector<Index> heatmap_order(const std::vector<std::pair<std::string, AssocCell<double>>>& codep,
                                 bool by_codependence);

/// Self-contained SVG of the co-location PMI points with a co-dependence
/// side panel (bars with ±1 sd whiskers, axis broken when the largest bar
/// exceeds five times the next one).
std::string render_heatmap(const AssocMatrix<double>& coloc,
                           const std::vector<std::pair<std::string, AssocCell<double>>>& codep,
                           const HeatmapOptions& opts = {});

}  // namespace colocinfo::svg
