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

#include "slsearch/mos_pomdp.h"

#include <algorithm>
#include <cmath>

#include "slsearch/angles.h"
#include "slsearch/errors.h"

namespace slsearch {

double RobotPose::angle() const { return heading * kPi / 4.0; }

std::string Action::Name() const {
  switch (kind) {
    case Kind::kForward:
      return "Forward";
    case Kind::kRotateLeft:
      return "RotateLeft";
    case Kind::kRotateRight:
      return "RotateRight";
    case Kind::kDetect:
      break;
  }
  return "Detect(" + std::to_string(target) + ")";
}

std::vector<Action> AllActions(int num_targets) {
  std::vector<Action> actions = {{Action::Kind::kForward, -1},
                                 {Action::Kind::kRotateLeft, -1},
                                 {Action::Kind::kRotateRight, -1}};
  for (int i = 0; i < num_targets; ++i) {
    actions.push_back({Action::Kind::kDetect, i});
  }
  return actions;
}

void SensorConfig::Validate() const {
  if (depth < 1) throw ConfigError("sensor depth must be >= 1");
  if (!(false_negative_rate >= 0.0 && false_negative_rate <= 1.0)) {
    throw ConfigError("false negative rate must lie in [0, 1]");
  }
  if (!(fov_half_angle > 0.0)) {
    throw ConfigError("field of view half angle must be positive");
  }
}

MosModel::MosModel(const GridMap &map, int num_targets, SensorConfig sensor)
    : map_(&map),
      num_targets_(num_targets),
      sensor_(sensor),
      actions_(AllActions(num_targets)),
      radius_(sensor.depth) {
  sensor_.Validate();
  if (num_targets < 1 || num_targets > 31) {
    throw ConfigError("number of targets must lie in [1, 31]");
  }
  const int side = 2 * radius_ + 1;
  const double depth_sq = static_cast<double>(sensor_.depth) * sensor_.depth;
  for (int h = 0; h < kNumHeadings; ++h) {
    const double heading = h * kPi / 4.0;
    fan_mask_[h].assign(static_cast<size_t>(side) * side, 0);
    for (int dy = -radius_; dy <= radius_; ++dy) {
      for (int dx = -radius_; dx <= radius_; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (dx * dx + dy * dy > depth_sq + 1e-9) continue;
        const double offset = std::abs(WrapPi(std::atan2(dy, dx) - heading));
        if (offset > sensor_.fov_half_angle + 1e-9) continue;
        fan_offsets_[h].push_back({dx, dy});
        fan_mask_[h][(dy + radius_) * side + dx + radius_] = 1;
      }
    }
    for (int k = 1; k <= kForwardCells; ++k) {
      steps_[h][k - 1] = {static_cast<int>(std::lround(k * std::cos(heading))),
                          static_cast<int>(std::lround(k * std::sin(heading)))};
    }
  }
}

std::vector<Cell> MosModel::CellsInFov(const RobotPose &pose) const {
  std::vector<Cell> cells;
  for (const Cell &o : fan_offsets_[pose.heading]) {
    const Cell c{pose.x + o.x, pose.y + o.y};
    if (map_->InBounds(c)) cells.push_back(c);
  }
  return cells;
}

bool MosModel::InFov(const RobotPose &pose, const Cell &cell) const {
  const int dx = cell.x - pose.x;
  const int dy = cell.y - pose.y;
  if (dx < -radius_ || dx > radius_ || dy < -radius_ || dy > radius_) {
    return false;
  }
  if (!map_->InBounds(cell)) return false;
  const int side = 2 * radius_ + 1;
  return fan_mask_[pose.heading][(dy + radius_) * side + dx + radius_] != 0;
}

RobotPose MosModel::Move(const RobotPose &pose, const Action &action) const {
  RobotPose next = pose;
  switch (action.kind) {
    case Action::Kind::kRotateLeft:
      next.heading = (pose.heading + 1) % kNumHeadings;
      break;
    case Action::Kind::kRotateRight:
      next.heading = (pose.heading + kNumHeadings - 1) % kNumHeadings;
      break;
    case Action::Kind::kForward:
      for (const Cell &step : steps_[pose.heading]) {
        const Cell c{pose.x + step.x, pose.y + step.y};
        if (!map_->InBounds(c)) break;
        next.x = c.x;
        next.y = c.y;
      }
      break;
    case Action::Kind::kDetect:
      break;
  }
  return next;
}

MosState MosModel::Transition(const MosState &state,
                              const Action &action) const {
  MosState next = state;
  next.robot = Move(state.robot, action);
  if (action.kind == Action::Kind::kDetect) {
    const int i = action.target;
    if (!state.IsFound(i) && InFov(state.robot, state.targets[i])) {
      next.found |= 1u << i;
    }
  }
  return next;
}

int MosModel::Reward(const MosState &state, const Action &action,
                     const MosState &next) const {
  if (action.IsMotion()) return kMoveReward;
  const int i = action.target;
  return (!state.IsFound(i) && next.IsFound(i)) ? kDetectReward
                                                : kWrongDetectReward;
}

SensorObservation MosModel::Observe(const MosState &state,
                                    std::mt19937_64 &rng) const {
  SensorObservation obs;
  obs.found = state.found;
  obs.detections.assign(num_targets_, kNotDetected);
  const double eps = sensor_.false_negative_rate;
  for (int i = 0; i < num_targets_; ++i) {
    if (state.IsFound(i) || !InFov(state.robot, state.targets[i])) continue;
    if (eps > 0.0) {
      std::bernoulli_distribution miss(eps);
      if (miss(rng)) continue;
    }
    obs.detections[i] = map_->Index(state.targets[i]);
  }
  return obs;
}

namespace {

void FilterTargets(Belief &belief, const SensorObservation &observation,
                   const MosModel &model) {
  const GridMap &map = model.map();
  const double eps = model.sensor().false_negative_rate;
  const std::vector<Cell> fan = model.CellsInFov(belief.robot);
  for (size_t i = 0; i < belief.targets.size(); ++i) {
    if ((belief.found >> i) & 1u) continue;
    Field &hist = belief.targets[i];
    if (observation.Detected(static_cast<int>(i))) {
      std::fill(hist.values().begin(), hist.values().end(), 0.0);
      hist[observation.detections[i]] = 1.0;
      continue;
    }
    for (const Cell &c : fan) hist.at(c) *= eps;
    if (!hist.Normalize()) hist = Field::Uniform(map.width(), map.height());
  }
}

}  // namespace

Belief BeliefUpdate(const Belief &belief, const Action &action,
                    const SensorObservation &observation,
                    const MosModel &model) {
  Belief next = belief;
  next.robot = model.Move(belief.robot, action);
  next.found = observation.found;
  FilterTargets(next, observation, model);
  return next;
}

Belief ObserveInPlace(const Belief &belief,
                      const SensorObservation &observation,
                      const MosModel &model) {
  Belief next = belief;
  next.found = observation.found;
  FilterTargets(next, observation, model);
  return next;
}

std::string_view PriorModeName(PriorMode mode) {
  switch (mode) {
    case PriorMode::kSlu:
      return "slu";
    case PriorMode::kKeyword:
      return "keyword";
    case PriorMode::kInformed:
      return "informed";
    case PriorMode::kUniform:
      break;
  }
  return "uniform";
}

PriorMode ParsePriorMode(std::string_view name) {
  if (name == "slu") return PriorMode::kSlu;
  if (name == "keyword") return PriorMode::kKeyword;
  if (name == "uniform") return PriorMode::kUniform;
  if (name == "informed") return PriorMode::kInformed;
  throw ConfigError("unknown prior '" + std::string(name) +
                    "' (expected slu, keyword, uniform or informed)");
}

Field UniformPrior(const GridMap &map) {
  return Field::Uniform(map.width(), map.height());
}

Field InformedPrior(const GridMap &map, const Cell &truth, double sigma) {
  Field field(map.width(), map.height());
  for (int i = 0; i < field.size(); ++i) {
    const Cell c = map.CellAt(i);
    const double dx = c.x - truth.x;
    const double dy = c.y - truth.y;
    field[i] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
  }
  field.Normalize(0.0);
  return field;
}

Field KeywordPrior(const GridMap &map, const std::vector<std::string> &grounds,
                   int dilation, double mass) {
  std::vector<uint8_t> region(map.num_cells(), 0);
  for (const std::string &id : grounds) {
    for (const Cell &c : map.Get(id).cells) {
      for (int dy = -dilation; dy <= dilation; ++dy) {
        for (int dx = -dilation; dx <= dilation; ++dx) {
          const Cell n{c.x + dx, c.y + dy};
          if (map.InBounds(n)) region[map.Index(n)] = 1;
        }
      }
    }
  }
  const int inside =
      static_cast<int>(std::count(region.begin(), region.end(), 1));
  const int outside = map.num_cells() - inside;
  if (inside == 0) return UniformPrior(map);
  Field field(map.width(), map.height());
  if (outside == 0) mass = 1.0;
  for (int i = 0; i < field.size(); ++i) {
    field[i] = region[i] ? mass / inside : (1.0 - mass) / outside;
  }
  return field;
}

Belief InitBelief(std::vector<Field> priors, const RobotPose &robot) {
  for (Field &f : priors) {
    if (!f.Normalize()) {
      throw ContractViolation("prior histogram has no mass");
    }
  }
  Belief belief;
  belief.targets = std::move(priors);
  belief.robot = robot;
  return belief;
}

}  // namespace slsearch
