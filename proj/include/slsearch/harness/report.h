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

// Summary statistics and plain-text report writers (CSV, SVG).

#ifndef SLSEARCH_HARNESS_REPORT_H_
#define SLSEARCH_HARNESS_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "slsearch/field.h"
#include "slsearch/gridmap.h"

namespace slsearch {

struct MeanCi {
  int n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Normal approximation: mean +- 1.96 standard errors (sample deviation).
MeanCi MeanWithCi(const std::vector<double> &values);

struct EpisodeOutcome {
  bool success = false;
  int steps = 0;
};

// counts[L - 1] = successful episodes finishing within L steps, L = 1..limit.
std::vector<int> CompletionCurve(const std::vector<EpisodeOutcome> &episodes,
                                 int limit);

struct PlotSeries {
  std::string name;
  std::vector<double> y;  // plotted at x = 1, 2, ...
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Panels side by side, one polyline per series with a legend.
std::string LinePlotSvg(const std::vector<PlotPanel> &panels);

// Grayscale cells (darker = more probable), north up. Landmarks are outlined
// when a map is given; `mark` draws a red square.
std::string HeatmapSvg(const Field &field, const GridMap *map = nullptr,
                       std::optional<Cell> mark = std::nullopt);

// "x,y,probability" rows in cell index order.
std::string FieldCsv(const Field &field);

// Writes text, creating parent directories. Throws std::runtime_error.
void WriteText(const std::filesystem::path &path, const std::string &text);

}  // namespace slsearch

#endif  // SLSEARCH_HARNESS_REPORT_H_
