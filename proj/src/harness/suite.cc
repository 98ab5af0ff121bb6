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

#include "slsearch/harness/suite.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "fmt/format.h"
#include "slsearch/errors.h"

namespace slsearch {

void SuiteConfig::Validate() const {
  if (city_seeds.empty()) throw ConfigError("cities: at least one required");
  if (descriptions_per_city < 1) {
    throw ConfigError("descriptions_per_city: must be >= 1");
  }
  if (baselines.empty()) throw ConfigError("baselines: at least one required");
  if (depths.empty()) throw ConfigError("depths: at least one required");
  for (int d : depths) {
    if (d < 3 || d > 5) throw ConfigError("depths: each must be 3, 4 or 5");
  }
  if (max_steps < 1 || max_steps > 200) {
    throw ConfigError("max_steps: must lie in [1, 200]");
  }
  if (simulations < 1) throw ConfigError("simulations: must be >= 1");
  if (threads < 1) throw ConfigError("threads: must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon: must lie in [0, 1]");
  }
  if (target_id.empty()) throw ConfigError("target: empty id");
  if (language.relations.empty()) {
    throw ConfigError("relations: at least one required");
  }
  for (const std::string &r : language.relations) {
    if (language.model.lexicon->Find(r) == nullptr) {
      throw ConfigError("relations: unknown relation '" + r + "'");
    }
  }
}

namespace {

uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename T>
T Get(const nlohmann::json &doc, const char *key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ConfigError(std::string(key) + ": wrong type");
  }
}

}  // namespace

SuiteConfig ParseSuiteConfig(const nlohmann::json &doc) {
  if (!doc.is_object()) throw ConfigError("suite config must be an object");
  SuiteConfig config;
  config.name = Get<std::string>(doc, "name", config.name);
  config.seed = Get<uint64_t>(doc, "seed", config.seed);
  if (doc.contains("cities")) {
    config.city_seeds = Get<std::vector<uint64_t>>(doc, "cities", {});
  } else if (doc.contains("num_cities")) {
    const int n = Get<int>(doc, "num_cities", 0);
    if (n < 1) throw ConfigError("num_cities: must be >= 1");
    config.city_seeds.clear();
    for (int k = 0; k < n; ++k)
      config.city_seeds.push_back(Mix(config.seed + k));
  }
  config.width = Get<int>(doc, "width", config.width);
  config.height = Get<int>(doc, "height", config.height);
  config.descriptions_per_city =
      Get<int>(doc, "descriptions_per_city", config.descriptions_per_city);
  if (doc.contains("baselines")) {
    config.baselines.clear();
    for (const auto &name :
         Get<std::vector<std::string>>(doc, "baselines", {})) {
      try {
        config.baselines.push_back(ParsePriorMode(name));
      } catch (const ConfigError &e) {
        throw ConfigError(std::string("baselines: ") + e.what());
      }
    }
  }
  config.depths = Get<std::vector<int>>(doc, "depths", config.depths);
  config.max_steps = Get<int>(doc, "max_steps", config.max_steps);
  config.simulations = Get<int>(doc, "simulations", config.simulations);
  config.epsilon = Get<double>(doc, "epsilon", config.epsilon);
  config.threads = Get<int>(doc, "threads", config.threads);
  config.heatmaps = Get<bool>(doc, "heatmaps", config.heatmaps);
  if (doc.contains("target")) {
    const auto &t = doc.at("target");
    config.target_id = Get<std::string>(t, "id", config.target_id);
    config.target_phrase =
        Get<std::string>(t, "phrase", SynonymFromId(config.target_id));
  }
  config.language.relations = Get<std::vector<std::string>>(
      doc, "relations", config.language.relations);
  if (doc.contains("for_models")) {
    const auto &m = doc.at("for_models");
    config.front_model = Get<std::string>(m, "front", "");
    config.left_model = Get<std::string>(m, "left", "");
  }
  config.Validate();
  return config;
}

SuitePlan PlanSuite(const SuiteConfig &config) {
  config.Validate();
  SuitePlan plan;
  for (uint64_t seed : config.city_seeds) {
    plan.maps.push_back(GenerateCity(seed, config.width, config.height));
  }
  int next_id = 0;
  for (size_t c = 0; c < plan.maps.size(); ++c) {
    const GridMap &map = plan.maps[c];
    for (int d = 0; d < config.descriptions_per_city; ++d) {
      const uint64_t seed = Mix(Mix(config.seed) ^ Mix(c * 7919 + d));
      const GeneratedLanguage language = GenerateLanguage(
          map, config.target_id, config.target_phrase, seed, config.language);
      std::mt19937_64 rng(Mix(seed));
      RobotPose robot{
          std::uniform_int_distribution<int>(0, map.width() - 1)(rng),
          std::uniform_int_distribution<int>(0, map.height() - 1)(rng),
          std::uniform_int_distribution<int>(0, kNumHeadings - 1)(rng)};
      for (int depth : config.depths) {
        for (PriorMode baseline : config.baselines) {
          TrialConfig trial;
          trial.trial_id = std::to_string(next_id++);
          trial.map = map.name();
          trial.targets = {{config.target_id, language.truth}};
          trial.robot = robot;
          trial.sensor_depth = depth;
          trial.epsilon = config.epsilon;
          trial.prior = baseline;
          trial.language = language.text;
          trial.seed = seed;
          trial.max_steps = config.max_steps;
          trial.planner.simulations = config.simulations;
          plan.trials.push_back(std::move(trial));
          plan.map_of_trial.push_back(static_cast<int>(c));
        }
      }
    }
  }
  return plan;
}

const ConditionSummary &SuiteReport::Condition(PriorMode baseline,
                                               int depth) const {
  for (const ConditionSummary &c : conditions) {
    if (c.baseline == baseline && c.depth == depth) return c;
  }
  throw ContractViolation("suite has no condition " +
                          std::string(PriorModeName(baseline)) + "/" +
                          std::to_string(depth));
}

std::vector<std::string> TrialRelations(const TrialResult &trial) {
  std::vector<std::string> out;
  for (const SpatialTuple &t : trial.tuples) {
    if (std::find(out.begin(), out.end(), t.relation) == out.end()) {
      out.push_back(t.relation);
    }
  }
  return out;
}

SuiteReport Summarize(std::vector<TrialResult> trials,
                      const std::vector<PriorMode> &baselines,
                      const std::vector<int> &depths, int max_steps) {
  SuiteReport report;
  report.trials = std::move(trials);
  report.max_steps = max_steps;
  for (const TrialResult &t : report.trials) {
    if (!t.error.empty()) ++report.failures;
  }
  for (int depth : depths) {
    for (PriorMode baseline : baselines) {
      ConditionSummary summary;
      summary.baseline = baseline;
      summary.depth = depth;
      std::vector<double> rewards;
      std::vector<EpisodeOutcome> episodes;
      std::map<std::string, std::vector<double>> by_relation;
      for (const TrialResult &t : report.trials) {
        if (t.baseline != baseline || t.depth != depth || !t.error.empty()) {
          continue;
        }
        rewards.push_back(t.discounted_reward);
        episodes.push_back({t.success, t.steps});
        summary.successes += t.success ? 1 : 0;
        for (const std::string &r : TrialRelations(t)) {
          by_relation[r].push_back(t.discounted_reward);
        }
      }
      summary.reward = MeanWithCi(rewards);
      summary.completion = CompletionCurve(episodes, max_steps);
      report.conditions.push_back(std::move(summary));
      for (const auto &[relation, values] : by_relation) {
        report.prepositions.push_back(
            {baseline, depth, relation, MeanWithCi(values)});
      }
    }
  }
  return report;
}

SuiteReport RunSuite(const SuiteConfig &config, const ForProvider &provider,
                     const std::optional<std::filesystem::path> &heatmap_dir) {
  const SuitePlan plan = PlanSuite(config);
  std::vector<TrialResult> results(plan.trials.size());
  const int per_group =
      static_cast<int>(config.depths.size() * config.baselines.size());

  auto run_one = [&](size_t i) {
    const TrialConfig &trial = plan.trials[i];
    TrialContext context;
    context.map = &plan.maps[plan.map_of_trial[i]];
    context.target_vocabulary = {{config.target_id, {config.target_phrase}}};
    context.for_provider = provider;
    context.model = config.language.model;
    TrialResult &result = results[i];
    try {
      result = RunTrial(trial, context);
      if (config.heatmaps && heatmap_dir) {
        const TrialPrior prior = BuildPrior(trial, context);
        WriteText(*heatmap_dir / ("trial_" + trial.trial_id + ".svg"),
                  HeatmapSvg(prior.fields.front(), context.map,
                             trial.targets.front().cell));
      }
    } catch (const std::exception &e) {
      result = TrialResult{};
      result.trial_id = trial.trial_id;
      result.baseline = trial.prior;
      result.depth = trial.sensor_depth;
      result.seed = trial.seed;
      result.language = trial.language;
      result.error = e.what();
    }
    result.group = static_cast<int>(i) / per_group;
  };

  const int workers =
      std::min<int>(config.threads, static_cast<int>(plan.trials.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < plan.trials.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < plan.trials.size(); i = next++) run_one(i);
      });
    }
    for (std::thread &t : pool) t.join();
  }
  return Summarize(std::move(results), config.baselines, config.depths,
                   config.max_steps);
}

MeanCi PairedDifference(const SuiteReport &report, PriorMode a, PriorMode b,
                        int depth) {
  std::map<int, double> ra;
  std::map<int, double> rb;
  for (const TrialResult &t : report.trials) {
    if (t.depth != depth || !t.error.empty()) continue;
    if (t.baseline == a) ra[t.group] = t.discounted_reward;
    if (t.baseline == b) rb[t.group] = t.discounted_reward;
  }
  std::vector<double> diffs;
  for (const auto &[group, value] : ra) {
    auto it = rb.find(group);
    if (it != rb.end()) diffs.push_back(value - it->second);
  }
  return MeanWithCi(diffs);
}

std::string ResultsCsv(const SuiteReport &report) {
  std::string out =
      "trial_id,baseline,depth,seed,steps,success,discounted_reward,"
      "relations\n";
  for (const TrialResult &t : report.trials) {
    std::string relations;
    for (const std::string &r : TrialRelations(t)) {
      if (!relations.empty()) relations += ";";
      relations += r;
    }
    const std::string reward =
        t.error.empty() ? fmt::format("{:.6f}", t.discounted_reward) : "nan";
    out += fmt::format("{},{},{},{},{},{},{},{}\n", t.trial_id,
                       PriorModeName(t.baseline), t.depth, t.seed, t.steps,
                       t.success ? 1 : 0, reward, relations);
  }
  return out;
}

std::string SummaryCsv(const SuiteReport &report) {
  std::string out = "baseline,depth,n,mean_reward,ci_low,ci_high,successes\n";
  for (const ConditionSummary &c : report.conditions) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{}\n",
                       PriorModeName(c.baseline), c.depth, c.reward.n,
                       c.reward.mean, c.reward.lo, c.reward.hi, c.successes);
  }
  return out;
}

std::string PrepositionsCsv(const SuiteReport &report) {
  std::string out = "baseline,depth,relation,n,mean_reward,ci_low,ci_high\n";
  for (const PrepositionSummary &p : report.prepositions) {
    out += fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f}\n",
                       PriorModeName(p.baseline), p.depth, p.relation,
                       p.reward.n, p.reward.mean, p.reward.lo, p.reward.hi);
  }
  return out;
}

std::string CurvesSvg(const SuiteReport &report) {
  std::vector<PlotPanel> panels;
  std::vector<int> depths;
  for (const ConditionSummary &c : report.conditions) {
    if (std::find(depths.begin(), depths.end(), c.depth) == depths.end()) {
      depths.push_back(c.depth);
    }
  }
  for (int depth : depths) {
    PlotPanel panel;
    panel.title = "sensor depth " + std::to_string(depth);
    panel.x_label = "maximum search steps";
    panel.y_label = "completed tasks";
    for (const ConditionSummary &c : report.conditions) {
      if (c.depth != depth) continue;
      panel.series.push_back(
          {std::string(PriorModeName(c.baseline)),
           std::vector<double>(c.completion.begin(), c.completion.end())});
    }
    panels.push_back(std::move(panel));
  }
  return LinePlotSvg(panels);
}

void WriteSuiteOutputs(const SuiteReport &report,
                       const std::filesystem::path &out_dir) {
  WriteText(out_dir / "results.csv", ResultsCsv(report));
  WriteText(out_dir / "summary.csv", SummaryCsv(report));
  WriteText(out_dir / "prepositions.csv", PrepositionsCsv(report));
  WriteText(out_dir / "curves.svg", CurvesSvg(report));
}

}  // namespace slsearch
