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

#include "slsearch/harness/generators.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>
#include <set>

#include "slsearch/errors.h"

namespace slsearch {

namespace {

constexpr std::array<const char *, 24> kHeads = {
    "bel", "hi",  "cor", "dal",  "fen", "gar", "kel", "lor",
    "mar", "pel", "ros", "sel",  "tam", "vin", "wil", "bram",
    "cal", "dor", "ell", "quin", "har", "jas", "zel", "brock"};
constexpr std::array<const char *, 16> kTails = {
    "mont",  "lo",   "ton",   "ridge", "ford",  "wick", "dale", "bury",
    "stead", "vale", "worth", "ham",   "field", "more", "gate", "crest"};
constexpr std::array<const char *, 5> kBuildingWords = {
    "building", "tower", "hall", "center", "plaza"};
constexpr std::array<const char *, 12> kStreetNames = {
    "oak",    "maple", "pine",   "cedar",  "elm",      "birch",
    "willow", "aspen", "spruce", "laurel", "chestnut", "hazel"};
constexpr std::array<const char *, 3> kStreetWords = {"street", "avenue",
                                                      "road"};

int Uniform(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  return s;
}

struct Rect {
  int x0, y0, x1, y1;  // inclusive
};

bool Near(const Rect &a, const Rect &b, int gap) {
  return a.x0 <= b.x1 + gap && b.x0 <= a.x1 + gap && a.y0 <= b.y1 + gap &&
         b.y0 <= a.y1 + gap;
}

std::vector<Cell> RectCells(const Rect &r) {
  std::vector<Cell> cells;
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) cells.push_back({x, y});
  }
  return cells;
}

}  // namespace

GridMap GenerateCity(uint64_t seed, int width, int height) {
  if (width < 16 || height < 16) {
    throw ConfigError("generated cities need at least 16x16 cells");
  }
  std::mt19937_64 rng(seed);
  std::vector<Landmark> landmarks;
  std::vector<Rect> streets;
  std::vector<bool> vertical_streets;
  std::vector<Rect> occupied;

  const int num_streets = Uniform(rng, 2, 4);
  std::set<size_t> used_names;
  for (int attempt = 0;
       attempt < 200 && static_cast<int>(streets.size()) < num_streets;
       ++attempt) {
    const bool vertical = Uniform(rng, 0, 1) == 1;
    const int w = Uniform(rng, 1, 2);
    const int extent = vertical ? width : height;
    const int pos = Uniform(rng, 3, extent - 3 - w);
    Rect r = vertical ? Rect{pos, 0, pos + w - 1, height - 1}
                      : Rect{0, pos, width - 1, pos + w - 1};
    bool clash = false;
    for (size_t k = 0; k < streets.size(); ++k) {
      if (vertical_streets[k] == vertical && Near(r, streets[k], 5)) {
        clash = true;
      }
    }
    if (clash) continue;
    size_t name = 0;
    do {
      name = static_cast<size_t>(Uniform(rng, 0, kStreetNames.size() - 1));
    } while (used_names.contains(name));
    used_names.insert(name);
    const std::string word =
        kStreetWords[Uniform(rng, 0, kStreetWords.size() - 1)];
    Landmark lm;
    lm.id = Capitalize(kStreetNames[name]) + Capitalize(word);
    lm.kind = LandmarkKind::kStreet;
    lm.synonyms = {std::string(kStreetNames[name]) + " " + word};
    lm.cells = RectCells(r);
    landmarks.push_back(std::move(lm));
    streets.push_back(r);
    vertical_streets.push_back(vertical);
  }

  const int num_buildings = Uniform(rng, 8, 15);
  std::set<std::string> names;
  int placed = 0;
  for (int attempt = 0; attempt < 5000 && placed < num_buildings; ++attempt) {
    const int bw = Uniform(rng, 2, 5);
    const int bh = Uniform(rng, 2, 5);
    const int x0 = Uniform(rng, 0, width - bw);
    const int y0 = Uniform(rng, 0, height - bh);
    const Rect r{x0, y0, x0 + bw - 1, y0 + bh - 1};
    bool clash = false;
    for (const Rect &s : streets) clash = clash || Near(r, s, 1);
    for (const Rect &b : occupied) clash = clash || Near(r, b, 1);
    if (clash) continue;
    std::string name;
    do {
      name = std::string(kHeads[Uniform(rng, 0, kHeads.size() - 1)]) +
             kTails[Uniform(rng, 0, kTails.size() - 1)];
    } while (names.contains(name));
    names.insert(name);
    Landmark lm;
    lm.id = Capitalize(name);
    lm.kind = LandmarkKind::kBuilding;
    lm.synonyms = {
        name, name + " " +
                  kBuildingWords[Uniform(rng, 0, kBuildingWords.size() - 1)]};
    lm.cells = RectCells(r);
    landmarks.push_back(std::move(lm));
    occupied.push_back(r);
    ++placed;
  }
  return GridMap("city_" + std::to_string(seed), width, height, 5.0,
                 std::move(landmarks));
}

foref::CityDataset GenerateCityDataset(
    const std::string &name, uint64_t seed, int num_maps,
    const std::vector<foref::ForefKind> &kinds, double annotation_noise,
    int width, int height) {
  foref::CityDataset city;
  city.name = name;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < num_maps; ++k) {
    GridMap generated = GenerateCity(rng(), width, height);
    city.maps.emplace_back(name + "_" + std::to_string(k), width, height,
                           generated.cell_size_m(), generated.landmarks());
  }
  std::mt19937_64 label_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (const GridMap &map : city.maps) {
    for (const Landmark &lm : map.landmarks()) {
      if (lm.kind != LandmarkKind::kBuilding) continue;
      for (foref::ForefKind kind : kinds) {
        city.records.push_back(
            {map.name(), lm.id, kind,
             foref::SynthAnnotate(map, lm.id, kind, annotation_noise,
                                  label_rng)});
      }
    }
  }
  return city;
}

GeneratedLanguage GenerateLanguage(const GridMap &map,
                                   const std::string &target_id,
                                   const std::string &target_phrase,
                                   uint64_t seed,
                                   const LanguageOptions &options) {
  std::vector<const Landmark *> buildings;
  for (const Landmark &lm : map.landmarks()) {
    if (lm.kind == LandmarkKind::kBuilding) buildings.push_back(&lm);
  }
  if (buildings.empty()) {
    throw ContractViolation("map '" + map.name() + "' has no buildings");
  }
  if (options.relations.empty()) {
    throw ConfigError("language generator needs at least one relation");
  }
  const RelationLexicon &lexicon = *options.model.lexicon;
  SpatialModelConfig unblended = options.model;
  unblended.mixture_weight = 1.0;

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int count =
        std::min<int>(Uniform(rng, 1, 2), static_cast<int>(buildings.size()));
    GeneratedLanguage out;
    std::vector<std::optional<FrameOfReference>> frames;
    std::set<std::string> grounds;
    while (static_cast<int>(out.tuples.size()) < count) {
      const Landmark *ground = buildings[Uniform(rng, 0, buildings.size() - 1)];
      if (grounds.contains(ground->id)) continue;
      grounds.insert(ground->id);
      const std::string &relation =
          options.relations[Uniform(rng, 0, options.relations.size() - 1)];
      const ForRequirement need = RequiresFor(relation, lexicon);
      std::optional<FrameOfReference> frame;
      if (need.kind == ForKind::kAbsolute) {
        frame = AbsoluteFor(relation, *ground, lexicon);
      } else if (need.required) {
        const auto kind = need.kind == ForKind::kRelativeFront
                              ? foref::ForefKind::kFront
                              : foref::ForefKind::kLeft;
        frame = MakeFrame(CenterOfMass(*ground),
                          foref::SynthAnnotate(map, ground->id, kind,
                                               options.for_noise, rng));
      }
      out.tuples.push_back({target_id, relation, ground->id});
      frames.push_back(frame);
    }

    std::vector<double> cdf(map.num_cells());
    double total = 0.0;
    for (int i = 0; i < map.num_cells(); ++i) {
      double w = 1.0;
      for (size_t t = 0; t < out.tuples.size() && w > 0.0; ++t) {
        w *= RelationLikelihood(out.tuples[t], frames[t], map.CellAt(i), map,
                                unblended)
                 .weight;
      }
      total += w;
      cdf[i] = total;
    }
    if (total < 1e-12) continue;
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.truth = map.CellAt(static_cast<int>(it - cdf.begin()));

    out.text = "the " + target_phrase + " is";
    for (size_t t = 0; t < out.tuples.size(); ++t) {
      if (t > 0) out.text += ",";
      out.text += " " + RelationPhrase(out.tuples[t].relation) + " " +
                  map.Get(out.tuples[t].ground).synonyms.front();
    }
    return out;
  }
  throw ContractViolation("no consistent description found for map '" +
                          map.name() + "'");
}

}  // namespace slsearch
