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

// Benchmark suites: baselines x sensor depths x generated descriptions on
// generated cities, with aggregate statistics and report files.

#ifndef SLSEARCH_HARNESS_SUITE_H_
#define SLSEARCH_HARNESS_SUITE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slsearch/harness/generators.h"
#include "slsearch/harness/report.h"
#include "slsearch/harness/trial.h"

namespace slsearch {

struct SuiteConfig {
  std::string name = "suite";
  uint64_t seed = 1;
  std::vector<uint64_t> city_seeds = {1, 2, 3, 4, 5};
  int width = 41;
  int height = 41;
  int descriptions_per_city = 20;
  std::vector<PriorMode> baselines = {PriorMode::kInformed, PriorMode::kSlu,
                                      PriorMode::kKeyword, PriorMode::kUniform};
  std::vector<int> depths = {3};
  int max_steps = 200;
  int simulations = 1000;
  double epsilon = 0.0;
  std::string target_id = "RedCar";
  std::string target_phrase = "red car";
  LanguageOptions language;
  int threads = 1;
  bool heatmaps = false;
  // Frame-of-reference model files; the noiseless oracle is used when unset.
  std::string front_model;
  std::string left_model;

  void Validate() const;
};

// Keys (all optional): name, seed, cities (seed list) or num_cities,
// width, height, descriptions_per_city, baselines, depths, max_steps,
// simulations, epsilon, target {id, phrase}, relations, threads, heatmaps,
// for_models {front, left}. Throws ConfigError naming bad fields.
SuiteConfig ParseSuiteConfig(const nlohmann::json &doc);

struct SuitePlan {
  std::vector<GridMap> maps;  // one per city seed
  std::vector<int> map_of_trial;
  std::vector<TrialConfig> trials;
};

// Trials ordered by city, description, depth, baseline. Every baseline and
// depth of one description shares the robot start, true cell and seed.
SuitePlan PlanSuite(const SuiteConfig &config);

struct ConditionSummary {
  PriorMode baseline = PriorMode::kUniform;
  int depth = 0;
  MeanCi reward;
  int successes = 0;
  std::vector<int> completion;  // step limits 1..max_steps
};

struct PrepositionSummary {
  PriorMode baseline = PriorMode::kUniform;
  int depth = 0;
  std::string relation;
  MeanCi reward;
};

struct SuiteReport {
  std::vector<TrialResult> trials;  // in plan order
  std::vector<ConditionSummary> conditions;
  std::vector<PrepositionSummary> prepositions;
  int failures = 0;
  int max_steps = 0;

  const ConditionSummary &Condition(PriorMode baseline, int depth) const;
};

SuiteReport Summarize(std::vector<TrialResult> trials,
                      const std::vector<PriorMode> &baselines,
                      const std::vector<int> &depths, int max_steps);

// Runs every trial (on config.threads workers) and aggregates. A trial that
// throws is recorded with its error and the suite continues. Prior heatmaps
// go to heatmap_dir when config.heatmaps is set.
SuiteReport RunSuite(
    const SuiteConfig &config, const ForProvider &provider,
    const std::optional<std::filesystem::path> &heatmap_dir = std::nullopt);

// Per-group reward differences a - b at one depth (groups where both ran).
MeanCi PairedDifference(const SuiteReport &report, PriorMode a, PriorMode b,
                        int depth);

// Relations of the tuples used by a trial, deduplicated, in order.
std::vector<std::string> TrialRelations(const TrialResult &trial);

std::string ResultsCsv(const SuiteReport &report);
std::string SummaryCsv(const SuiteReport &report);
std::string PrepositionsCsv(const SuiteReport &report);
std::string CurvesSvg(const SuiteReport &report);

// results.csv, summary.csv, prepositions.csv and curves.svg.
void WriteSuiteOutputs(const SuiteReport &report,
                       const std::filesystem::path &out_dir);

}  // namespace slsearch

#endif  // SLSEARCH_HARNESS_SUITE_H_
