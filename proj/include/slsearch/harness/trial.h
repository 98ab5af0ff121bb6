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

// One search episode: language -> prior -> plan/act/filter loop.

#ifndef SLSEARCH_HARNESS_TRIAL_H_
#define SLSEARCH_HARNESS_TRIAL_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slsearch/gridmap.h"
#include "slsearch/langparse.h"
#include "slsearch/mos_pomdp.h"
#include "slsearch/planner.h"
#include "slsearch/spatial_model.h"

namespace slsearch {

struct TrialTarget {
  std::string id;
  Cell cell;
};

struct TrialConfig {
  std::string trial_id = "0";
  std::string map;  // path; resolved by the caller
  std::vector<TrialTarget> targets;
  RobotPose robot;
  int sensor_depth = 3;
  double epsilon = 0.0;
  PriorMode prior = PriorMode::kSlu;
  std::string language;
  uint64_t seed = 0;
  int max_steps = 200;
  PlannerConfig planner;

  // Throws ConfigError naming the offending field.
  void Validate() const;
};

// Keys: map, targets [{id, cell}], robot [x, y, heading], sensor_depth,
// epsilon, prior, language, seed, max_steps; optional trial_id, simulations.
// Throws ConfigError naming missing or invalid fields.
TrialConfig ParseTrialConfig(const nlohmann::json &doc);
nlohmann::json TrialConfigToJson(const TrialConfig &config);

struct TrialContext {
  const GridMap *map = nullptr;
  // Target synonyms for the parser; ids map to SynonymFromId when empty.
  Vocabulary target_vocabulary;
  ForProvider for_provider;
  SpatialModelConfig model;
  // Receives one PlanDiagnostics line per step when set.
  std::function<void(const nlohmann::json &)> diagnostics;
};

struct TrialResult {
  std::string trial_id;
  int group = 0;  // trials sharing a description and seed
  PriorMode baseline = PriorMode::kUniform;
  int depth = 0;
  uint64_t seed = 0;
  int steps = 0;
  bool success = false;
  double discounted_reward = 0.0;
  std::string language;
  std::vector<SpatialTuple> tuples;
  std::string error;  // non-empty when the trial could not run
};

// Parsed tuples and the per-target prior fields for the configured baseline.
struct TrialPrior {
  std::vector<SpatialTuple> tuples;
  std::vector<Field> fields;
};
TrialPrior BuildPrior(const TrialConfig &config, const TrialContext &context);

// Discount used for the reported reward.
inline constexpr double kRewardDiscount = 0.95;

TrialResult RunTrial(const TrialConfig &config, const TrialContext &context);

}  // namespace slsearch

#endif  // SLSEARCH_HARNESS_TRIAL_H_
