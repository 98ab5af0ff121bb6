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

// City grid maps with named landmarks.
//
// Coordinates are in cell units: +x points east, +y points north, and angles
// are measured counterclockwise from +x. Cell (x, y) has its center at the
// continuous point (x, y).

#ifndef SLSEARCH_GRIDMAP_H_
#define SLSEARCH_GRIDMAP_H_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace slsearch {

// Raised when a map file is malformed or violates a map invariant.
class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Cell {
  int x = 0;
  int y = 0;

  auto operator<=>(const Cell &) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point &) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double Dot(const Vec2 &other) const { return x * other.x + y * other.y; }
  double Norm() const;
  bool operator==(const Vec2 &) const = default;
};

inline Point ToPoint(const Cell &c) {
  return {static_cast<double>(c.x), static_cast<double>(c.y)};
}

enum class LandmarkKind { kBuilding, kStreet };

std::string_view LandmarkKindName(LandmarkKind kind);

struct Landmark {
  std::string id;
  LandmarkKind kind = LandmarkKind::kBuilding;
  std::vector<std::string> synonyms;
  // Sorted, unique, never empty once owned by a GridMap.
  std::vector<Cell> cells;
};

// Immutable after construction. Construction validates all invariants.
class GridMap {
 public:
  GridMap(std::string name, int width, int height, double cell_size_m,
          std::vector<Landmark> landmarks);

  const std::string &name() const { return name_; }
  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }
  double cell_size_m() const { return cell_size_m_; }
  const std::vector<Landmark> &landmarks() const { return landmarks_; }

  bool InBounds(const Cell &c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  int Index(const Cell &c) const { return c.y * width_ + c.x; }
  Cell CellAt(int index) const { return {index % width_, index / width_}; }

  // Returns nullptr when no landmark has this id.
  const Landmark *Find(std::string_view id) const;
  // Throws MapError naming the id when absent.
  const Landmark &Get(std::string_view id) const;

  // Landmark id occupying the cell, if any.
  std::optional<std::string> LandmarkAt(const Cell &c) const;

  // Synonym table used by the language parser: id -> synonyms.
  std::map<std::string, std::vector<std::string>> Vocabulary() const;

 private:
  std::string name_;
  int width_;
  int height_;
  double cell_size_m_;
  std::vector<Landmark> landmarks_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<int> owner_;  // per cell: landmark index or -1
};

GridMap ParseMap(const nlohmann::json &doc);
nlohmann::json MapToJson(const GridMap &map);

GridMap LoadMap(const std::filesystem::path &path);
void SaveMap(const GridMap &map, const std::filesystem::path &path);

// Rotates every landmark by quarter_turns * 90 degrees counterclockwise about
// the map center. Width and height swap for odd turns.
GridMap RotateMap(const GridMap &map, int quarter_turns);

// Translates every landmark; cells leaving the map raise MapError.
GridMap TranslateMap(const GridMap &map, int dx, int dy);

Point CenterOfMass(const Landmark &landmark);

struct ClosestCell {
  Cell cell;
  double distance = 0.0;
};

// Minimum Euclidean distance from p to the landmark's cells. Ties go to the
// lexicographically smallest (x, y).
ClosestCell FindClosestCell(const Point &p, const Landmark &landmark);
ClosestCell FindClosestCell(const Point &p, const std::vector<Cell> &cells);

// (to - from) normalized; nullopt when the points coincide within 1e-9.
std::optional<Vec2> UnitVector(const Point &from, const Point &to);

// Vector with the given angle, counterclockwise from +x.
Vec2 DirectionOf(double angle);

}  // namespace slsearch

#endif  // SLSEARCH_GRIDMAP_H_
