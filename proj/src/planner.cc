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

#include "slsearch/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slsearch/errors.h"

namespace slsearch {

void PlannerConfig::Validate() const {
  if (simulations < 1) throw ConfigError("simulations must be >= 1");
  if (!(discount > 0.0 && discount < 1.0)) {
    throw ConfigError("discount must lie in (0, 1)");
  }
  if (!(exploration > 0.0)) throw ConfigError("exploration must be > 0");
  if (max_depth < 1) throw ConfigError("max depth must be >= 1");
}

namespace {

constexpr int kNumMotions = 3;

struct ActionStats {
  int visits = 0;
  double q = 0.0;
  std::vector<std::pair<uint64_t, int>> children;  // observation key -> node
};

struct Node {
  int visits = 0;
  uint64_t legal = 0;  // bit per action index
  std::vector<ActionStats> actions;
};

class Search {
 public:
  Search(const MosModel &model, const PlannerConfig &config,
         std::mt19937_64 &rng)
      : model_(model),
        config_(config),
        rng_(rng),
        actions_(model.actions()),
        detections_(model.num_targets(), kNotDetected) {
    const double base = model.map().num_cells() + 1.0;
    if (std::pow(base, model.num_targets()) >
        static_cast<double>(std::numeric_limits<uint64_t>::max() / 2)) {
      throw ConfigError("too many targets for this map size");
    }
    obs_base_ = static_cast<uint64_t>(base);
  }

  PlanResult Run(const Belief &belief) {
    const int n_targets = model_.num_targets();
    // Cumulative histograms for root sampling.
    std::vector<std::vector<double>> cdfs(n_targets);
    for (int i = 0; i < n_targets; ++i) {
      if ((belief.found >> i) & 1u) continue;
      const auto &values = belief.targets[i].values();
      auto &cdf = cdfs[i];
      cdf.resize(values.size());
      double acc = 0.0;
      for (size_t k = 0; k < values.size(); ++k) {
        acc += std::max(0.0, values[k]);
        cdf[k] = acc;
      }
      if (!(acc > 0.0)) {
        throw ContractViolation("belief for target " + std::to_string(i) +
                                " has no mass");
      }
    }

    uint64_t root_legal = MotionMask();
    const std::vector<Cell> fan = model_.CellsInFov(belief.robot);
    for (int i = 0; i < n_targets; ++i) {
      if ((belief.found >> i) & 1u) continue;
      double mass = 0.0;
      for (const Cell &c : fan) mass += belief.targets[i].at(c);
      if (mass > 0.0) root_legal |= uint64_t{1} << (kNumMotions + i);
    }
    NewNode(root_legal);

    std::vector<Cell> targets(n_targets);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int sim = 0; sim < config_.simulations; ++sim) {
      for (int i = 0; i < n_targets; ++i) {
        if ((belief.found >> i) & 1u) {
          targets[i] = belief.targets[i].size() > 0
                           ? model_.map().CellAt(belief.targets[i].ArgMax())
                           : Cell{};
          continue;
        }
        const auto &cdf = cdfs[i];
        const double u = unit(rng_) * cdf.back();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        targets[i] = model_.map().CellAt(static_cast<int>(it - cdf.begin()));
      }
      Simulate(targets, belief.robot, belief.found, 0, 0);
    }

    PlanResult result;
    result.simulations = config_.simulations;
    const Node &root = tree_[0];
    int best = -1;
    for (size_t a = 0; a < actions_.size(); ++a) {
      const ActionStats &s = root.actions[a];
      result.root_q.push_back(s.visits > 0 ? s.q : 0.0);
      result.root_visits.push_back(s.visits);
      result.root_legal.push_back((root.legal >> a) & 1u);
      if (s.visits > 0 && (best < 0 || s.q > root.actions[best].q)) {
        best = static_cast<int>(a);
      }
    }
    result.action = actions_[best < 0 ? 0 : best];
    return result;
  }

 private:
  uint64_t MotionMask() const { return (uint64_t{1} << kNumMotions) - 1; }

  int NewNode(uint64_t legal) {
    tree_.push_back(Node{0, legal, std::vector<ActionStats>(actions_.size())});
    return static_cast<int>(tree_.size()) - 1;
  }

  // Applies the action in place and returns its reward.
  int Step(const std::vector<Cell> &targets, const Action &action,
           RobotPose &robot, uint32_t &found) const {
    if (action.IsMotion()) {
      robot = model_.Move(robot, action);
      return kMoveReward;
    }
    const int i = action.target;
    if (!((found >> i) & 1u) && model_.InFov(robot, targets[i])) {
      found |= 1u << i;
      return kDetectReward;
    }
    return kWrongDetectReward;
  }

  // Fills detections_ and returns the observation key.
  uint64_t Observe(const std::vector<Cell> &targets, const RobotPose &robot,
                   uint32_t found) {
    const double eps = model_.sensor().false_negative_rate;
    uint64_t key = 0;
    uint64_t scale = 1;
    for (int i = 0; i < model_.num_targets(); ++i) {
      int det = kNotDetected;
      if (!((found >> i) & 1u) && model_.InFov(robot, targets[i])) {
        bool seen = true;
        if (eps > 0.0) {
          std::bernoulli_distribution miss(eps);
          seen = !miss(rng_);
        }
        if (seen) det = model_.map().Index(targets[i]);
      }
      detections_[i] = det;
      key += static_cast<uint64_t>(det + 1) * scale;
      scale *= obs_base_;
    }
    return key;
  }

  uint64_t LegalAfterObservation(uint32_t found) const {
    uint64_t legal = MotionMask();
    for (int i = 0; i < model_.num_targets(); ++i) {
      if (!((found >> i) & 1u) && detections_[i] != kNotDetected) {
        legal |= uint64_t{1} << (kNumMotions + i);
      }
    }
    return legal;
  }

  int Select(const Node &node) const {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    const double log_n =
        std::log(static_cast<double>(std::max(1, node.visits)));
    for (size_t a = 0; a < node.actions.size(); ++a) {
      if (!((node.legal >> a) & 1u)) continue;
      const ActionStats &s = node.actions[a];
      if (s.visits == 0) return static_cast<int>(a);
      const double score =
          s.q + config_.exploration * std::sqrt(log_n / s.visits);
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(a);
      }
    }
    return best;
  }

  double Simulate(const std::vector<Cell> &targets, RobotPose robot,
                  uint32_t found, int node_index, int depth) {
    if (depth >= config_.max_depth || model_.AllFound(found)) return 0.0;
    const int a = Select(tree_[node_index]);
    const int reward = Step(targets, actions_[a], robot, found);
    const uint64_t key = Observe(targets, robot, found);

    int child = -1;
    for (const auto &[k, idx] : tree_[node_index].actions[a].children) {
      if (k == key) {
        child = idx;
        break;
      }
    }
    double ret;
    if (child < 0) {
      child = NewNode(LegalAfterObservation(found));
      tree_[node_index].actions[a].children.emplace_back(key, child);
      ret =
          reward + config_.discount * Rollout(targets, robot, found, depth + 1);
    } else {
      ret = reward + config_.discount *
                         Simulate(targets, robot, found, child, depth + 1);
    }
    Node &node = tree_[node_index];
    ActionStats &stats = node.actions[a];
    ++node.visits;
    ++stats.visits;
    stats.q += (ret - stats.q) / stats.visits;
    return ret;
  }

  // Uniformly random legal actions until the depth limit or all targets are
  // found. Expects detections_ to hold the latest observation.
  double Rollout(const std::vector<Cell> &targets, RobotPose robot,
                 uint32_t found, int depth) {
    double ret = 0.0;
    double scale = 1.0;
    int legal[32];
    for (; depth < config_.max_depth && !model_.AllFound(found); ++depth) {
      int n = 0;
      for (int a = 0; a < kNumMotions; ++a) legal[n++] = a;
      for (int i = 0; i < model_.num_targets(); ++i) {
        if (!((found >> i) & 1u) && detections_[i] != kNotDetected) {
          legal[n++] = kNumMotions + i;
        }
      }
      std::uniform_int_distribution<int> pick(0, n - 1);
      const int a = legal[pick(rng_)];
      ret += scale * Step(targets, actions_[a], robot, found);
      scale *= config_.discount;
      Observe(targets, robot, found);
    }
    return ret;
  }

  const MosModel &model_;
  const PlannerConfig &config_;
  std::mt19937_64 &rng_;
  const std::vector<Action> &actions_;
  std::vector<int> detections_;
  uint64_t obs_base_ = 0;
  std::vector<Node> tree_;
};

}  // namespace

PlanResult Plan(const Belief &belief, const MosModel &model,
                const PlannerConfig &config, std::mt19937_64 &rng) {
  config.Validate();
  if (static_cast<int>(belief.targets.size()) != model.num_targets()) {
    throw ContractViolation("belief and model disagree on target count");
  }
  Search search(model, config, rng);
  return search.Run(belief);
}

Environment::Environment(const MosModel &model, MosState initial, uint64_t seed)
    : model_(&model), state_(std::move(initial)), rng_(seed) {
  if (static_cast<int>(state_.targets.size()) != model.num_targets()) {
    throw ConfigError("environment state has the wrong number of targets");
  }
}

Environment::Outcome Environment::Execute(const Action &action) {
  MosState next = model_->Transition(state_, action);
  Outcome out;
  out.reward = model_->Reward(state_, action, next);
  state_ = std::move(next);
  out.observation = model_->Observe(state_, rng_);
  return out;
}

SensorObservation Environment::Look() { return model_->Observe(state_, rng_); }

StepRecord StepAndReplan(const Belief &belief, const PlannerConfig &config,
                         Environment &environment, std::mt19937_64 &rng) {
  const MosModel &model = environment.model();
  if (model.AllFound(belief.found)) {
    throw ContractViolation("episode already terminated");
  }
  StepRecord record;
  record.plan = Plan(belief, model, config, rng);
  record.action = record.plan.action;
  Environment::Outcome outcome = environment.Execute(record.action);
  record.observation = std::move(outcome.observation);
  record.reward = outcome.reward;
  record.belief =
      BeliefUpdate(belief, record.action, record.observation, model);
  return record;
}

nlohmann::json PlanDiagnostics(int step, const PlanResult &plan,
                               const MosModel &model) {
  nlohmann::json q = nlohmann::json::object();
  for (size_t a = 0; a < model.actions().size(); ++a) {
    if (plan.root_visits[a] > 0) q[model.actions()[a].Name()] = plan.root_q[a];
  }
  return {{"step", step},
          {"action", plan.action.Name()},
          {"root_q", q},
          {"sims", plan.simulations}};
}

}  // namespace slsearch
