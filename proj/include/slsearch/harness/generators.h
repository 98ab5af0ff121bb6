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

// Seeded synthetic cities and spatial descriptions.

#ifndef SLSEARCH_HARNESS_GENERATORS_H_
#define SLSEARCH_HARNESS_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slsearch/foref/evaluation.h"
#include "slsearch/gridmap.h"
#include "slsearch/langparse.h"
#include "slsearch/spatial_model.h"

namespace slsearch {

// 2-4 full-length street corridors (1-2 cells wide) and 8-15 rectangular
// buildings (2x2 to 5x5) that touch neither streets nor each other.
GridMap GenerateCity(uint64_t seed, int width = 41, int height = 41);

// `num_maps` cities named "<name>_<k>" plus one annotation record per
// building and kind, labelled by the synthetic annotator.
foref::CityDataset GenerateCityDataset(
    const std::string &name, uint64_t seed, int num_maps,
    const std::vector<foref::ForefKind> &kinds, double annotation_noise,
    int width = 41, int height = 41);

struct LanguageOptions {
  std::vector<std::string> relations = {"near",   "next", "beside", "front",
                                        "behind", "left", "right",  "north",
                                        "south",  "east", "west"};
  // Annotator noise used when sampling relative frames.
  double for_noise = 0.2;
  SpatialModelConfig model;
};

struct GeneratedLanguage {
  std::string text;
  std::vector<SpatialTuple> tuples;
  Cell truth;
};

// Picks 1-2 (relation, building) pairs, draws the true target cell from the
// unblended product of their likelihoods, and renders
// "the <target> is <phrase> <ground>[, <phrase> <ground>]".
GeneratedLanguage GenerateLanguage(const GridMap &map,
                                   const std::string &target_id,
                                   const std::string &target_phrase,
                                   uint64_t seed,
                                   const LanguageOptions &options = {});

}  // namespace slsearch

#endif  // SLSEARCH_HARNESS_GENERATORS_H_
