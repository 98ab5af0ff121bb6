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

#include "slsearch/harness/trial.h"

#include <random>
#include <set>

#include "slsearch/errors.h"

namespace slsearch {

void TrialConfig::Validate() const {
  if (targets.empty()) throw ConfigError("targets: at least one is required");
  if (targets.size() > 31) throw ConfigError("targets: at most 31 supported");
  std::set<std::string> ids;
  for (const TrialTarget &t : targets) {
    if (t.id.empty()) throw ConfigError("targets: empty id");
    if (!ids.insert(t.id).second) {
      throw ConfigError("targets: duplicate id '" + t.id + "'");
    }
  }
  if (robot.heading < 0 || robot.heading >= kNumHeadings) {
    throw ConfigError("robot: heading index must lie in [0, 7]");
  }
  if (sensor_depth < 3 || sensor_depth > 5) {
    throw ConfigError("sensor_depth: must be 3, 4 or 5");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon: must lie in [0, 1]");
  }
  if (max_steps < 1 || max_steps > 200) {
    throw ConfigError("max_steps: must lie in [1, 200]");
  }
  try {
    planner.Validate();
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("planner: ") + e.what());
  }
}

namespace {

template <typename T>
T Require(const nlohmann::json &doc, const char *key) {
  if (!doc.contains(key)) {
    throw ConfigError(std::string(key) + ": missing");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ConfigError(std::string(key) + ": wrong type");
  }
}

template <typename T>
T Optional(const nlohmann::json &doc, const char *key, T fallback) {
  return doc.contains(key) ? Require<T>(doc, key) : fallback;
}

}  // namespace

TrialConfig ParseTrialConfig(const nlohmann::json &doc) {
  if (!doc.is_object()) throw ConfigError("trial config must be an object");
  TrialConfig config;
  if (doc.contains("trial_id")) {
    const auto &id = doc.at("trial_id");
    config.trial_id = id.is_string() ? id.get<std::string>() : id.dump();
  }
  config.map = Require<std::string>(doc, "map");
  if (!doc.contains("targets") || !doc.at("targets").is_array()) {
    throw ConfigError("targets: missing or not an array");
  }
  for (const auto &t : doc.at("targets")) {
    TrialTarget target;
    target.id = Require<std::string>(t, "id");
    const auto cell = Require<std::vector<int>>(t, "cell");
    if (cell.size() != 2) throw ConfigError("targets: cell must be [x, y]");
    target.cell = {cell[0], cell[1]};
    config.targets.push_back(target);
  }
  const auto robot = Require<std::vector<int>>(doc, "robot");
  if (robot.size() != 3) {
    throw ConfigError("robot: expected [x, y, heading_index]");
  }
  config.robot = {robot[0], robot[1], robot[2]};
  config.sensor_depth = Require<int>(doc, "sensor_depth");
  config.epsilon = Optional<double>(doc, "epsilon", 0.0);
  try {
    config.prior = ParsePriorMode(Require<std::string>(doc, "prior"));
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("prior: ") + e.what());
  }
  config.language = Optional<std::string>(doc, "language", "");
  config.seed = Require<uint64_t>(doc, "seed");
  config.max_steps = Optional<int>(doc, "max_steps", 200);
  config.planner.simulations =
      Optional<int>(doc, "simulations", config.planner.simulations);
  config.Validate();
  return config;
}

nlohmann::json TrialConfigToJson(const TrialConfig &config) {
  nlohmann::json targets = nlohmann::json::array();
  for (const TrialTarget &t : config.targets) {
    targets.push_back({{"id", t.id}, {"cell", {t.cell.x, t.cell.y}}});
  }
  return {{"trial_id", config.trial_id},
          {"map", config.map},
          {"targets", targets},
          {"robot", {config.robot.x, config.robot.y, config.robot.heading}},
          {"sensor_depth", config.sensor_depth},
          {"epsilon", config.epsilon},
          {"prior", PriorModeName(config.prior)},
          {"language", config.language},
          {"seed", config.seed},
          {"max_steps", config.max_steps},
          {"simulations", config.planner.simulations}};
}

TrialPrior BuildPrior(const TrialConfig &config, const TrialContext &context) {
  const GridMap &map = *context.map;
  TrialPrior prior;
  Vocabulary vocabulary = context.target_vocabulary;
  for (const TrialTarget &t : config.targets) {
    if (!vocabulary.contains(t.id)) vocabulary[t.id] = {SynonymFromId(t.id)};
  }
  const SpatialLanguageObservation parsed =
      ExtractTuples(config.language, map, vocabulary, *context.model.lexicon);
  prior.tuples = parsed.tuples;
  for (const TrialTarget &t : config.targets) {
    const std::vector<SpatialTuple> tuples = parsed.ForFigure(t.id);
    switch (config.prior) {
      case PriorMode::kInformed:
        prior.fields.push_back(InformedPrior(map, t.cell));
        break;
      case PriorMode::kUniform:
        prior.fields.push_back(UniformPrior(map));
        break;
      case PriorMode::kKeyword: {
        std::vector<std::string> grounds;
        for (const SpatialTuple &tuple : tuples)
          grounds.push_back(tuple.ground);
        prior.fields.push_back(KeywordPrior(map, grounds));
        break;
      }
      case PriorMode::kSlu:
        prior.fields.push_back(
            tuples.empty()
                ? UniformPrior(map)
                : LanguageLikelihoodField(tuples, map, context.for_provider,
                                          context.model));
        break;
    }
  }
  return prior;
}

TrialResult RunTrial(const TrialConfig &config, const TrialContext &context) {
  config.Validate();
  if (context.map == nullptr) throw ConfigError("map: not loaded");
  const GridMap &map = *context.map;
  if (!map.InBounds(config.robot.cell())) {
    throw ConfigError("robot: position outside the map");
  }
  for (const TrialTarget &t : config.targets) {
    if (!map.InBounds(t.cell)) {
      throw ConfigError("targets: cell of '" + t.id + "' outside the map");
    }
  }

  TrialResult result;
  result.trial_id = config.trial_id;
  result.baseline = config.prior;
  result.depth = config.sensor_depth;
  result.seed = config.seed;
  result.language = config.language;

  TrialPrior prior = BuildPrior(config, context);
  result.tuples = prior.tuples;

  SensorConfig sensor;
  sensor.depth = config.sensor_depth;
  sensor.false_negative_rate = config.epsilon;
  const MosModel model(map, static_cast<int>(config.targets.size()), sensor);

  MosState truth;
  for (const TrialTarget &t : config.targets) truth.targets.push_back(t.cell);
  truth.robot = config.robot;
  Environment environment(model, truth, config.seed);
  std::mt19937_64 planner_rng(config.seed ^ 0x5851f42d4c957f2dULL);

  Belief belief = InitBelief(std::move(prior.fields), config.robot);
  belief = ObserveInPlace(belief, environment.Look(), model);

  double scale = 1.0;
  while (result.steps < config.max_steps && !model.AllFound(belief.found)) {
    StepRecord record =
        StepAndReplan(belief, config.planner, environment, planner_rng);
    if (context.diagnostics) {
      context.diagnostics(PlanDiagnostics(result.steps, record.plan, model));
    }
    result.discounted_reward += scale * record.reward;
    scale *= kRewardDiscount;
    ++result.steps;
    belief = std::move(record.belief);
  }
  result.success = model.AllFound(belief.found);
  return result;
}

}  // namespace slsearch
