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

#include "slsearch/gridmap.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace slsearch {

double Vec2::Norm() const { return std::hypot(x, y); }

std::string_view LandmarkKindName(LandmarkKind kind) {
  return kind == LandmarkKind::kStreet ? "street" : "building";
}

namespace {

std::string Lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string CellText(const Cell &c) {
  std::ostringstream out;
  out << "(" << c.x << ", " << c.y << ")";
  return out.str();
}

}  // namespace

GridMap::GridMap(std::string name, int width, int height, double cell_size_m,
                 std::vector<Landmark> landmarks)
    : name_(std::move(name)),
      width_(width),
      height_(height),
      cell_size_m_(cell_size_m),
      landmarks_(std::move(landmarks)) {
  if (width_ <= 0 || height_ <= 0) {
    throw MapError("map '" + name_ + "': non-positive dimensions " +
                   std::to_string(width_) + "x" + std::to_string(height_));
  }
  if (!(cell_size_m_ > 0.0) || !std::isfinite(cell_size_m_)) {
    throw MapError("map '" + name_ + "': cell_size_m must be positive");
  }
  owner_.assign(static_cast<size_t>(width_) * height_, -1);
  for (size_t i = 0; i < landmarks_.size(); ++i) {
    Landmark &lm = landmarks_[i];
    if (lm.id.empty()) throw MapError("landmark with empty id");
    if (!index_.emplace(lm.id, static_cast<int>(i)).second) {
      throw MapError("duplicate landmark id '" + lm.id + "'");
    }
    if (lm.cells.empty()) {
      throw MapError("landmark '" + lm.id + "' has no cells");
    }
    for (auto &syn : lm.synonyms) syn = Lowercase(syn);
    std::sort(lm.cells.begin(), lm.cells.end());
    auto dup = std::adjacent_find(lm.cells.begin(), lm.cells.end());
    if (dup != lm.cells.end()) {
      throw MapError("landmark '" + lm.id + "' lists cell " + CellText(*dup) +
                     " twice");
    }
    for (const Cell &c : lm.cells) {
      if (!InBounds(c)) {
        throw MapError("landmark '" + lm.id + "' cell " + CellText(c) +
                       " is outside the " + std::to_string(width_) + "x" +
                       std::to_string(height_) + " map");
      }
      // Overlapping landmarks are legal; the first listed owns the cell.
      int &owner = owner_[Index(c)];
      if (owner < 0) owner = static_cast<int>(i);
    }
  }
}

const Landmark *GridMap::Find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &landmarks_[it->second];
}

const Landmark &GridMap::Get(std::string_view id) const {
  const Landmark *lm = Find(id);
  if (lm == nullptr) {
    throw MapError("map '" + name_ + "' has no landmark '" + std::string(id) +
                   "'");
  }
  return *lm;
}

std::optional<std::string> GridMap::LandmarkAt(const Cell &c) const {
  if (!InBounds(c)) return std::nullopt;
  int owner = owner_[Index(c)];
  if (owner < 0) return std::nullopt;
  return landmarks_[owner].id;
}

std::map<std::string, std::vector<std::string>> GridMap::Vocabulary() const {
  std::map<std::string, std::vector<std::string>> vocab;
  for (const Landmark &lm : landmarks_) {
    auto &syns = vocab[lm.id];
    syns = lm.synonyms;
    if (syns.empty()) syns.push_back(Lowercase(lm.id));
  }
  return vocab;
}

GridMap ParseMap(const nlohmann::json &doc) {
  try {
    std::vector<Landmark> landmarks;
    for (const auto &entry : doc.at("landmarks")) {
      Landmark lm;
      lm.id = entry.at("id").get<std::string>();
      const std::string kind = entry.at("kind").get<std::string>();
      if (kind == "building") {
        lm.kind = LandmarkKind::kBuilding;
      } else if (kind == "street") {
        lm.kind = LandmarkKind::kStreet;
      } else {
        throw MapError("landmark '" + lm.id + "' has unknown kind '" + kind +
                       "'");
      }
      lm.synonyms = entry.at("synonyms").get<std::vector<std::string>>();
      for (const auto &cell : entry.at("cells")) {
        if (!cell.is_array() || cell.size() != 2) {
          throw MapError("landmark '" + lm.id + "' has malformed cell " +
                         cell.dump());
        }
        lm.cells.push_back({cell[0].get<int>(), cell[1].get<int>()});
      }
      landmarks.push_back(std::move(lm));
    }
    return GridMap(doc.at("name").get<std::string>(),
                   doc.at("width").get<int>(), doc.at("height").get<int>(),
                   doc.at("cell_size_m").get<double>(), std::move(landmarks));
  } catch (const nlohmann::json::exception &e) {
    throw MapError(std::string("malformed map JSON: ") + e.what());
  }
}

nlohmann::json MapToJson(const GridMap &map) {
  nlohmann::json doc;
  doc["name"] = map.name();
  doc["width"] = map.width();
  doc["height"] = map.height();
  doc["cell_size_m"] = map.cell_size_m();
  auto &landmarks = doc["landmarks"] = nlohmann::json::array();
  for (const Landmark &lm : map.landmarks()) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell &c : lm.cells) cells.push_back({c.x, c.y});
    landmarks.push_back({{"id", lm.id},
                         {"kind", LandmarkKindName(lm.kind)},
                         {"synonyms", lm.synonyms},
                         {"cells", std::move(cells)}});
  }
  return doc;
}

GridMap LoadMap(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot open map file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw MapError("cannot parse map file " + path.string() + ": " + e.what());
  }
  return ParseMap(doc);
}

void SaveMap(const GridMap &map, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw MapError("cannot write map file " + path.string());
  out << MapToJson(map).dump(1) << "\n";
}

GridMap RotateMap(const GridMap &map, int quarter_turns) {
  int turns = ((quarter_turns % 4) + 4) % 4;
  int w = map.width();
  int h = map.height();
  std::vector<Landmark> landmarks = map.landmarks();
  for (int t = 0; t < turns; ++t) {
    // (x, y) -> (h - 1 - y, x) is a counterclockwise quarter turn.
    for (Landmark &lm : landmarks) {
      for (Cell &c : lm.cells) c = {h - 1 - c.y, c.x};
    }
    std::swap(w, h);
  }
  return GridMap(map.name(), w, h, map.cell_size_m(), std::move(landmarks));
}

GridMap TranslateMap(const GridMap &map, int dx, int dy) {
  std::vector<Landmark> landmarks = map.landmarks();
  for (Landmark &lm : landmarks) {
    for (Cell &c : lm.cells) c = {c.x + dx, c.y + dy};
  }
  return GridMap(map.name(), map.width(), map.height(), map.cell_size_m(),
                 std::move(landmarks));
}

Point CenterOfMass(const Landmark &landmark) {
  double sx = 0.0;
  double sy = 0.0;
  for (const Cell &c : landmark.cells) {
    sx += c.x;
    sy += c.y;
  }
  const double n = static_cast<double>(landmark.cells.size());
  return {sx / n, sy / n};
}

ClosestCell FindClosestCell(const Point &p, const std::vector<Cell> &cells) {
  ClosestCell best{{}, std::numeric_limits<double>::infinity()};
  double best_sq = std::numeric_limits<double>::infinity();
  for (const Cell &c : cells) {
    const double dx = c.x - p.x;
    const double dy = c.y - p.y;
    const double sq = dx * dx + dy * dy;
    if (sq < best_sq || (sq == best_sq && c < best.cell)) {
      best_sq = sq;
      best.cell = c;
    }
  }
  best.distance = std::sqrt(best_sq);
  return best;
}

ClosestCell FindClosestCell(const Point &p, const Landmark &landmark) {
  return FindClosestCell(p, landmark.cells);
}

std::optional<Vec2> UnitVector(const Point &from, const Point &to) {
  const Vec2 d{to.x - from.x, to.y - from.y};
  const double norm = d.Norm();
  if (norm < 1e-9) return std::nullopt;
  return Vec2{d.x / norm, d.y / norm};
}

Vec2 DirectionOf(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace slsearch
