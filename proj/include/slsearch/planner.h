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

// Online planning by Monte Carlo tree search over action/observation
// histories. Each simulation draws a full state from the exact histogram
// belief at the root, so no particle sets are kept below it.
//
// Detect(i) is offered only when target i may be in view: at the root when
// the belief puts mass inside the current fan, deeper in the tree and in
// rollouts when the latest simulated observation detected it.

#ifndef SLSEARCH_PLANNER_H_
#define SLSEARCH_PLANNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "slsearch/mos_pomdp.h"

namespace slsearch {

struct PlannerConfig {
  int simulations = 1000;
  double discount = 0.95;
  double exploration = 1000.0;
  int max_depth = 60;

  void Validate() const;
};

struct PlanResult {
  Action action;
  // Indexed like MosModel::actions(); unvisited or illegal actions have
  // visits 0 and q 0.
  std::vector<double> root_q;
  std::vector<int> root_visits;
  std::vector<bool> root_legal;
  int simulations = 0;
};

// Throws ContractViolation when a target histogram has no mass.
PlanResult Plan(const Belief &belief, const MosModel &model,
                const PlannerConfig &config, std::mt19937_64 &rng);

// Ground truth for one episode.
class Environment {
 public:
  Environment(const MosModel &model, MosState initial, uint64_t seed);

  const MosState &state() const { return state_; }
  const MosModel &model() const { return *model_; }

  struct Outcome {
    SensorObservation observation;
    int reward = 0;
  };
  Outcome Execute(const Action &action);
  SensorObservation Look();

 private:
  const MosModel *model_;
  MosState state_;
  std::mt19937_64 rng_;
};

struct StepRecord {
  Action action;
  SensorObservation observation;
  int reward = 0;
  Belief belief;  // after the update
  PlanResult plan;
};

// Plans on the belief, executes on the environment, and filters the belief
// with the resulting observation. The search tree is discarded.
StepRecord StepAndReplan(const Belief &belief, const PlannerConfig &config,
                         Environment &environment, std::mt19937_64 &rng);

// {"step", "action", "root_q": {name: q}, "sims"} for diagnostics output.
nlohmann::json PlanDiagnostics(int step, const PlanResult &plan,
                               const MosModel &model);

}  // namespace slsearch

#endif  // SLSEARCH_PLANNER_H_
