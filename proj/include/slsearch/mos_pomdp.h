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

// Multi-object search POMDP on a grid map: a robot with a fan-shaped sensor
// looks for static targets and must declare each one with a Detect action.

#ifndef SLSEARCH_MOS_POMDP_H_
#define SLSEARCH_MOS_POMDP_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "slsearch/field.h"
#include "slsearch/gridmap.h"

namespace slsearch {

inline constexpr int kNumHeadings = 8;
inline constexpr int kForwardCells = 3;
inline constexpr int kMoveReward = -10;
inline constexpr int kDetectReward = 1000;
inline constexpr int kWrongDetectReward = -1000;

struct RobotPose {
  int x = 0;
  int y = 0;
  int heading = 0;  // multiples of 45 degrees counterclockwise from +x

  Cell cell() const { return {x, y}; }
  double angle() const;
  bool operator==(const RobotPose &) const = default;
};

struct MosState {
  std::vector<Cell> targets;
  RobotPose robot;
  uint32_t found = 0;  // bit i set when target i has been detected

  bool IsFound(int i) const { return (found >> i) & 1u; }
  bool operator==(const MosState &) const = default;
};

struct Action {
  enum class Kind { kForward, kRotateLeft, kRotateRight, kDetect };
  Kind kind = Kind::kForward;
  int target = -1;  // Detect only

  bool IsMotion() const { return kind != Kind::kDetect; }
  std::string Name() const;
  bool operator==(const Action &) const = default;
};

// The fixed action order: Forward, RotateLeft, RotateRight, Detect(0..n-1).
std::vector<Action> AllActions(int num_targets);

struct SensorConfig {
  double fov_half_angle = 0.39269908169872414;  // 22.5 degrees
  int depth = 3;
  double false_negative_rate = 0.0;

  void Validate() const;
};

inline constexpr int kNotDetected = -1;

struct SensorObservation {
  // Per target: detected cell index, or kNotDetected.
  std::vector<int> detections;
  // The robot's found set after the action; the robot knows its own state.
  uint32_t found = 0;

  bool Detected(int i) const { return detections[i] != kNotDetected; }
  bool operator==(const SensorObservation &) const = default;
};

// Static description of one search problem. Safe to share across threads.
class MosModel {
 public:
  MosModel(const GridMap &map, int num_targets, SensorConfig sensor);

  const GridMap &map() const { return *map_; }
  int num_targets() const { return num_targets_; }
  const SensorConfig &sensor() const { return sensor_; }
  const std::vector<Action> &actions() const { return actions_; }

  // In-bounds cells other than the robot's own within `depth` and within the
  // half angle of the heading (with 1e-9 slack).
  std::vector<Cell> CellsInFov(const RobotPose &pose) const;
  bool InFov(const RobotPose &pose, const Cell &cell) const;

  RobotPose Move(const RobotPose &pose, const Action &action) const;
  MosState Transition(const MosState &state, const Action &action) const;
  int Reward(const MosState &state, const Action &action,
             const MosState &next) const;
  // Observation received in `state` (normally the post-action state).
  SensorObservation Observe(const MosState &state, std::mt19937_64 &rng) const;

  bool AllFound(uint32_t found) const {
    return found == (num_targets_ >= 32 ? ~0u : (1u << num_targets_) - 1u);
  }

 private:
  const GridMap *map_;
  int num_targets_;
  SensorConfig sensor_;
  std::vector<Action> actions_;
  int radius_;
  // Per heading: offsets inside the fan, and a (2r+1)^2 membership mask.
  std::array<std::vector<Cell>, kNumHeadings> fan_offsets_;
  std::array<std::vector<uint8_t>, kNumHeadings> fan_mask_;
  // Per heading: the kForwardCells intermediate displacements.
  std::array<std::array<Cell, kForwardCells>, kNumHeadings> steps_;
};

struct Belief {
  std::vector<Field> targets;  // one normalized histogram per target
  RobotPose robot;
  uint32_t found = 0;
};

// Exact Bayes filter. The robot pose follows the action deterministically.
// A detected target collapses to a point mass; otherwise cells in the fan are
// scaled by the false-negative rate and the histogram renormalized (reset to
// uniform if no mass survives). Found targets are left untouched.
Belief BeliefUpdate(const Belief &belief, const Action &action,
                    const SensorObservation &observation,
                    const MosModel &model);

// Same filter for an observation taken without acting (e.g. at start-up).
Belief ObserveInPlace(const Belief &belief,
                      const SensorObservation &observation,
                      const MosModel &model);

enum class PriorMode { kSlu, kKeyword, kUniform, kInformed };

std::string_view PriorModeName(PriorMode mode);
PriorMode ParsePriorMode(std::string_view name);

Field UniformPrior(const GridMap &map);
// Gaussian around the true cell, normalized.
Field InformedPrior(const GridMap &map, const Cell &truth, double sigma = 1.0);
// `mass` spread uniformly over the referenced landmarks' cells dilated by
// `dilation` (Chebyshev distance), the rest uniformly over the other cells.
// Uniform when no landmark is referenced.
Field KeywordPrior(const GridMap &map, const std::vector<std::string> &grounds,
                   int dilation = 2, double mass = 0.9);

Belief InitBelief(std::vector<Field> priors, const RobotPose &robot);

}  // namespace slsearch

#endif  // SLSEARCH_MOS_POMDP_H_
