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

#ifndef SLSEARCH_TESTS_TEST_UTIL_H_
#define SLSEARCH_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "slsearch/gridmap.h"
#include "slsearch/langparse.h"

namespace slsearch::testing {

inline std::vector<Cell> Rect(int x0, int y0, int x1, int y1) {
  std::vector<Cell> cells;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) cells.push_back({x, y});
  }
  return cells;
}

inline Landmark Building(std::string id, std::vector<Cell> cells) {
  Landmark lm;
  lm.synonyms = {SynonymFromId(id)};
  lm.id = std::move(id);
  lm.kind = LandmarkKind::kBuilding;
  lm.cells = std::move(cells);
  return lm;
}

inline Landmark Street(std::string id, std::vector<Cell> cells) {
  Landmark lm = Building(std::move(id), std::move(cells));
  lm.kind = LandmarkKind::kStreet;
  return lm;
}

// 10x10 map with two buildings and one street.
inline GridMap SmallMap() {
  return GridMap("small", 10, 10, 5.0,
                 {Building("Belmont", Rect(1, 6, 2, 7)),
                  Building("HiLo", Rect(6, 6, 8, 7)),
                  Street("MainStreet", Rect(0, 3, 9, 3))});
}

// Random map with a few rectangular buildings of arbitrary placement.
inline GridMap RandomMap(std::mt19937_64 &rng, int width, int height,
                         int buildings) {
  std::vector<Landmark> landmarks;
  for (int b = 0; b < buildings; ++b) {
    std::uniform_int_distribution<int> sx(0, width - 3), sy(0, height - 3),
        size(1, 3);
    const int x0 = sx(rng), y0 = sy(rng);
    landmarks.push_back(
        Building("B" + std::to_string(b),
                 Rect(x0, y0, std::min(width - 1, x0 + size(rng) - 1),
                      std::min(height - 1, y0 + size(rng) - 1))));
  }
  return GridMap("random", width, height, 5.0, std::move(landmarks));
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("slsearch_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace slsearch::testing

#endif  // SLSEARCH_TESTS_TEST_UTIL_H_
