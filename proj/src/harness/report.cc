// Copyright 2026 The slsearch Authors.
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

#include "slsearch/harness/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fmt/format.h"

namespace slsearch {

MeanCi MeanWithCi(const std::vector<double> &values) {
  MeanCi out;
  out.n = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / out.n;
  if (out.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (out.n - 1)) / std::sqrt(out.n);
  }
  out.lo = out.mean - 1.96 * out.standard_error;
  out.hi = out.mean + 1.96 * out.standard_error;
  return out;
}

std::vector<int> CompletionCurve(const std::vector<EpisodeOutcome> &episodes,
                                 int limit) {
  std::vector<int> counts(std::max(0, limit), 0);
  for (const EpisodeOutcome &e : episodes) {
    if (!e.success || e.steps > limit) continue;
    ++counts[std::max(1, e.steps) - 1];
  }
  for (int i = 1; i < limit; ++i) counts[i] += counts[i - 1];
  return counts;
}

namespace {

constexpr const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#17becf"};

std::string Escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string LinePlotSvg(const std::vector<PlotPanel> &panels) {
  constexpr double kW = 420, kH = 300, kLeft = 55, kRight = 15, kTop = 30,
                   kBottom = 45;
  const double total_w = kW * std::max<size_t>(1, panels.size());
  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      total_w, kH);
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel &panel = panels[p];
    const double ox = kW * p;
    size_t n = 1;
    double y_max = 1.0;
    for (const PlotSeries &s : panel.series) {
      n = std::max(n, s.y.size());
      for (double v : s.y) y_max = std::max(y_max, v);
    }
    const double pw = kW - kLeft - kRight;
    const double ph = kH - kTop - kBottom;
    auto X = [&](double x) {
      return ox + kLeft + (n > 1 ? (x - 1) / (n - 1) : 0.0) * pw;
    };
    auto Y = [&](double y) { return kTop + ph - y / y_max * ph; };
    svg << fmt::format(
        "<text x=\"{:.1f}\" y=\"18\" text-anchor=\"middle\" "
        "font-size=\"13\">{}</text>\n",
        ox + kLeft + pw / 2, Escape(panel.title));
    svg << fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
        "fill=\"none\" stroke=\"black\"/>\n",
        ox + kLeft, kTop, pw, ph);
    for (int t = 0; t <= 4; ++t) {
      const double yv = y_max * t / 4.0;
      svg << fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.0f}</text>\n",
          ox + kLeft - 4, Y(yv) + 4, yv);
      const double xv = 1 + (n - 1) * t / 4.0;
      svg << fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.0f}"
          "</text>\n",
          X(xv), kTop + ph + 14, xv);
    }
    svg << fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
        ox + kLeft + pw / 2, kH - 8, Escape(panel.x_label));
    svg << fmt::format(
        "<text transform=\"translate({:.1f},{:.1f}) rotate(-90)\" "
        "text-anchor=\"middle\">{}</text>\n",
        ox + 14, kTop + ph / 2, Escape(panel.y_label));
    for (size_t s = 0; s < panel.series.size(); ++s) {
      const PlotSeries &series = panel.series[s];
      const char *color = kColors[s % std::size(kColors)];
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < series.y.size(); ++i) {
        svg << fmt::format("{:.1f},{:.1f} ", X(i + 1.0), Y(series.y[i]));
      }
      svg << "\"/>\n";
      const double ly = kTop + 14 + 14 * s;
      svg << fmt::format(
          "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
          "stroke=\"{}\" stroke-width=\"2\"/>\n",
          ox + kLeft + 8, ly - 4, ox + kLeft + 26, ly - 4, color);
      svg << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
                         ox + kLeft + 30, ly, Escape(series.name));
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string HeatmapSvg(const Field &field, const GridMap *map,
                       std::optional<Cell> mark) {
  constexpr int kCell = 10;
  const int w = field.width();
  const int h = field.height();
  double peak = 0.0;
  for (double v : field.values()) peak = std::max(peak, v);
  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
      w * kCell, h * kCell);
  // Row y is drawn at the top when y = h - 1 so north points up.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = peak > 0.0 ? field.at({x, y}) / peak : 0.0;
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      svg << fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
          "fill=\"rgb({},{},{})\"/>\n",
          x * kCell, (h - 1 - y) * kCell, kCell, kCell, g, g, g);
    }
  }
  if (map != nullptr) {
    for (const Landmark &lm : map->landmarks()) {
      const char *color =
          lm.kind == LandmarkKind::kStreet ? "#888888" : "#1f77b4";
      for (const Cell &c : lm.cells) {
        svg << fmt::format(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
            "stroke=\"{}\" stroke-width=\"0.5\"/>\n",
            c.x * kCell, (h - 1 - c.y) * kCell, kCell, kCell, color);
      }
    }
  }
  if (mark) {
    svg << fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
        "stroke=\"red\" stroke-width=\"2\"/>\n",
        mark->x * kCell, (h - 1 - mark->y) * kCell, kCell, kCell);
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string FieldCsv(const Field &field) {
  std::string out = "x,y,probability\n";
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      out += fmt::format("{},{},{:.12g}\n", x, y, field.at({x, y}));
    }
  }
  return out;
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace slsearch
