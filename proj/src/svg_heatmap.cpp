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

#include "colocinfo/svg_heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace colocinfo::svg {

namespace {

constexpr double kCell = 22;
constexpr double kFont = 10;
constexpr double kPanel = 170;
constexpr double kTiny = 1e-12;

struct Rgb {
  double r, g, b;
};
constexpr Rgb kBlue{0x21, 0x66, 0xac};
constexpr Rgb kGrey{0xd4, 0xd4, 0xd4};
constexpr Rgb kRed{0xb2, 0x18, 0x2b};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string escape_comment(std::string s) {
  for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- -");
  return s;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string px(double x) { return fmt("%.2f", x); }

double clean(double v) { return std::abs(v) < kTiny ? 0.0 : v; }

}  // namespace

std::string diverging_color(double t) {
  if (!std::isfinite(t)) t = 0;
  t = std::clamp(t, -1.0, 1.0);
  const Rgb& end = t < 0 ? kBlue : kRed;
  const double a = std::abs(t);
  auto mix = [a](double from, double to) {
    return static_cast<int>(std::lround(from + (to - from) * a));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kGrey.r, end.r), mix(kGrey.g, end.g),
                mix(kGrey.b, end.b));
  return buf;
}

std::vector<Index> heatmap_order(const std::vector<std::pair<std::string, AssocCell<double>>>& codep,
                                 bool by_codependence) {
  std::vector<Index> order(codep.size());
  std::iota(order.begin(), order.end(), Index(0));
  if (by_codependence) {
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return codep[a].second.point > codep[b].second.point;
    });
  }
  return order;
}

std::string render_heatmap(const AssocMatrix<double>& coloc,
                           const std::vector<std::pair<std::string, AssocCell<double>>>& codep,
                           const HeatmapOptions& opts) {
  const Index n = coloc.rows();
  const bool panel = static_cast<Index>(codep.size()) == n && n > 0;
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  if (panel) order = heatmap_order(codep, opts.order_by_codependence);

  double limit = opts.color_limit;
  if (!(limit > 0)) {
    limit = 0;
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c)
        if (r != c || n == 1) limit = std::max(limit, std::abs(clean(coloc.point(r, c))));
  }
  auto t_of = [&](double v) { return limit > kTiny ? clean(v) / limit : 0.0; };

  std::size_t longest = 1;
  for (const auto& l : coloc.row_labels) longest = std::max(longest, l.size());
  const double label_w = 10 + 0.6 * kFont * static_cast<double>(longest);
  const double title_h = 28;
  const double x0 = label_w, y0 = title_h + label_w;
  const double grid_w = kCell * static_cast<double>(n);
  const double px1 = x0 + grid_w + 24;
  const double width = px1 + (panel ? kPanel + 60 : 0) + 10;
  const double legend_y = y0 + grid_w + 20;
  const double height = legend_y + 44;
  const std::string unit = to_string(coloc.log_base);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
     << px(height) << "\" viewBox=\"0 0 " << px(width) << ' ' << px(height) << "\">\n";
  os << "<!-- colocinfo heatmap";
  for (const auto& [k, v] : opts.metadata) os << ' ' << escape_comment(k + "=" + v);
  os << " color_limit=" << escape_comment(fmt("%.6g", limit)) << " -->\n";
  os << "<style>text{font-family:Helvetica,Arial,sans-serif;font-size:" << kFont
     << "px;fill:#222}</style>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"" << px(x0) << "\" y=\"18\" font-size=\"13\">" << escape_xml(opts.title)
     << " (" << unit << ")</text>\n";

  // labels
  for (Index k = 0; k < n; ++k) {
    const Index a = order[k];
    const double yc = y0 + kCell * (static_cast<double>(k) + 0.5) + kFont * 0.35;
    const double xc = x0 + kCell * (static_cast<double>(k) + 0.5) + kFont * 0.35;
    os << "<text x=\"" << px(x0 - 4) << "\" y=\"" << px(yc) << "\" text-anchor=\"end\">"
       << escape_xml(coloc.row_labels[a]) << "</text>\n";
    os << "<text transform=\"translate(" << px(xc) << ',' << px(y0 - 4)
       << ") rotate(-90)\">" << escape_xml(coloc.col_labels[a]) << "</text>\n";
  }

  // cells
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double v = coloc.point(order[r], order[c]);
      const double t = t_of(v);
      const double x = x0 + kCell * static_cast<double>(c), y = y0 + kCell * static_cast<double>(r);
      os << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(kCell)
         << "\" height=\"" << px(kCell) << "\" fill=\"" << diverging_color(t)
         << "\" stroke=\"#ffffff\" stroke-width=\"0.5\"><title>"
         << escape_xml(coloc.row_labels[order[r]] + " / " + coloc.col_labels[order[c]]) << ": "
         << fmt("%.4g", clean(v)) << " ± " << fmt("%.3g", coloc.sd(order[r], order[c]))
         << "</title></rect>\n";
      if (std::abs(t) > 1) {
        os << "<text x=\"" << px(x + kCell / 2) << "\" y=\"" << px(y + kCell / 2 + 3)
           << "\" text-anchor=\"middle\" font-size=\"7\" fill=\"#ffffff\">"
           << fmt("%.3g", v) << "</text>\n";
      }
    }
  }

  // legend
  const double lw = std::max(grid_w, 120.0);
  os << "<defs><linearGradient id=\"scale\" x1=\"0\" x2=\"1\" y1=\"0\" y2=\"0\">";
  for (int s = 0; s <= 4; ++s) {
    os << "<stop offset=\"" << s * 25 << "%\" stop-color=\""
       << diverging_color(-1.0 + 0.5 * s) << "\"/>";
  }
  os << "</linearGradient></defs>\n";
  os << "<rect x=\"" << px(x0) << "\" y=\"" << px(legend_y) << "\" width=\"" << px(lw)
     << "\" height=\"10\" fill=\"url(#scale)\"/>\n";
  const double ly = legend_y + 22;
  os << "<text x=\"" << px(x0) << "\" y=\"" << px(ly) << "\">" << fmt("%.3g", -limit)
     << "</text>\n";
  os << "<text x=\"" << px(x0 + lw / 2) << "\" y=\"" << px(ly)
     << "\" text-anchor=\"middle\">0</text>\n";
  os << "<text x=\"" << px(x0 + lw) << "\" y=\"" << px(ly) << "\" text-anchor=\"end\">"
     << fmt("%.3g", limit) << "</text>\n";

  if (panel) {
    std::vector<double> vals;
    for (const auto& [label, c] : codep) vals.push_back(std::max(0.0, clean(c.point)));
    std::vector<double> sorted = vals;
    std::sort(sorted.rbegin(), sorted.rend());
    const double top = sorted[0];
    const double second = sorted.size() > 1 ? sorted[1] : 0.0;
    const bool broken = second > kTiny && top > 5 * second;
    const Index top_index =
        std::max_element(vals.begin(), vals.end()) - vals.begin();

    double axis = 0;
    for (Index k = 0; k < n; ++k) {
      if (broken && k == top_index) continue;
      axis = std::max(axis, vals[k] + codep[k].second.sd);
    }
    axis = axis > kTiny ? axis * 1.05 : 1.0;
    auto xpos = [&](double v) { return px1 + kPanel * std::clamp(v / axis, 0.0, 1.0); };

    os << "<text x=\"" << px(px1) << "\" y=\"" << px(y0 - 8) << "\">Co-dependence (" << unit
       << ")</text>\n";
    os << "<line x1=\"" << px(px1) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(px1)
       << "\" y2=\"" << px(y0 + grid_w) << "\" stroke=\"#444\"/>\n";
    for (Index k = 0; k < n; ++k) {
      const Index a = order[k];
      const auto& cell = codep[a].second;
      const double y = y0 + kCell * static_cast<double>(k);
      const bool is_top = broken && a == top_index;
      const double bar_end = is_top ? px1 + kPanel : xpos(vals[a]);
      os << "<rect x=\"" << px(px1) << "\" y=\"" << px(y + 5) << "\" width=\""
         << px(bar_end - px1) << "\" height=\"" << px(kCell - 10)
         << "\" fill=\"#7f7f7f\"><title>" << escape_xml(codep[a].first) << ": "
         << fmt("%.4g", cell.point) << " ± " << fmt("%.3g", cell.sd) << "</title></rect>\n";
      if (is_top) {
        const double bx = px1 + kPanel * 0.7;
        for (double off : {-3.0, 3.0}) {
          os << "<line x1=\"" << px(bx + off - 3) << "\" y1=\"" << px(y + 2) << "\" x2=\""
             << px(bx + off + 3) << "\" y2=\"" << px(y + kCell - 2)
             << "\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n";
        }
        os << "<text x=\"" << px(px1 + kPanel + 4) << "\" y=\"" << px(y + kCell / 2 + 3)
           << "\">" << fmt("%.3g", cell.point) << " ± " << fmt("%.2g", cell.sd)
           << "</text>\n";
        continue;
      }
      const double lo = xpos(cell.point - cell.sd), hi = xpos(cell.point + cell.sd);
      const double ym = y + kCell / 2;
      os << "<path d=\"M" << px(lo) << ' ' << px(ym) << "H" << px(hi) << "M" << px(lo) << ' '
         << px(ym - 3) << "V" << px(ym + 3) << "M" << px(hi) << ' ' << px(ym - 3) << "V"
         << px(ym + 3) << "\" stroke=\"#000\" fill=\"none\"/>\n";
    }
    const double ay = y0 + grid_w + 12;
    os << "<text x=\"" << px(px1) << "\" y=\"" << px(ay) << "\">0</text>\n";
    os << "<text x=\"" << px(px1 + kPanel) << "\" y=\"" << px(ay) << "\" text-anchor=\"end\">"
       << fmt("%.3g", axis) << "</text>\n";
    if (broken) {
      os << "<text x=\"" << px(px1) << "\" y=\"" << px(ay + 14)
         << "\" font-style=\"italic\">broken axis: largest bar not to scale</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace colocinfo::svg
