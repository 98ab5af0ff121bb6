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

// Observation model for spatial language: turns the tuples describing one
// target into a normalized likelihood field over map cells.
//
// Each tuple (f, r, g) contributes
//
//   D * exp(-dist^2 / (2 sigma^2))
//
// where dist is the distance from the cell to the closest cell of ground g,
// sigma grows with the ground's size, and D is a direction factor comparing
// the cell's bearing with the direction the relation points in. Relations
// without a frame of reference use D = 1.

#ifndef SLSEARCH_SPATIAL_MODEL_H_
#define SLSEARCH_SPATIAL_MODEL_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slsearch/field.h"
#include "slsearch/gridmap.h"
#include "slsearch/langparse.h"

namespace slsearch {

struct FrameOfReference {
  Point origin;
  double theta = 0.0;  // [0, 2pi)
};

FrameOfReference MakeFrame(Point origin, double theta);

enum class DotMode {
  // |u . v| with u pointing from the cell toward the ground's closest cell.
  kAbs,
  // max(0, u . v) with u pointing from the ground's center of mass toward
  // the cell.
  kRectified,
};

struct SpatialModelConfig {
  DotMode dot_mode = DotMode::kRectified;
  // Weight of the language field when blended with a uniform field.
  double mixture_weight = 0.9;
  // Per-relation replacements for the lexicon's sigma multipliers.
  std::map<std::string, double> sigma_multipliers;
  const RelationLexicon *lexicon = &RelationLexicon::Default();

  // multiplier(relation) * (1 + sqrt(|cells(ground)|)), in cell units.
  double Sigma(std::string_view relation, const Landmark &ground) const;
  // Throws ContractViolation on out-of-range values.
  void Validate() const;
};

struct RelationWeightTrace {
  std::optional<Vec2> u;
  std::optional<Vec2> v;
  double dist = 0.0;
  double sigma = 0.0;
  double gaussian = 0.0;
  double dot_factor = 1.0;
};

struct RelationWeight {
  double weight = 0.0;
  RelationWeightTrace trace;
};

// Direction the relation points in under the given frame: the frame angle
// plus the relation's offset (pi for behind/right). For absolute relations
// the frame angle already is the compass angle. Throws ContractViolation for
// relations that need no frame.
Vec2 RelationDirection(
    std::string_view relation, const FrameOfReference &frame,
    const RelationLexicon &lexicon = RelationLexicon::Default());
// Absolute relations only.
Vec2 RelationDirection(
    std::string_view relation,
    const RelationLexicon &lexicon = RelationLexicon::Default());

// Frame with origin at the ground's center of mass and the compass angle of
// the relation. Throws ContractViolation for non-absolute relations.
FrameOfReference AbsoluteFor(
    std::string_view relation, const Landmark &ground,
    const RelationLexicon &lexicon = RelationLexicon::Default());

// Frame for a relative relation (front/behind/left/right).
using ForProvider =
    std::function<FrameOfReference(const SpatialTuple &, const GridMap &)>;

// `frame` may be omitted for relations without a frame and for absolute
// relations; relative relations require it.
RelationWeight RelationLikelihood(const SpatialTuple &tuple,
                                  const std::optional<FrameOfReference> &frame,
                                  const Cell &cell, const GridMap &map,
                                  const SpatialModelConfig &config);

// Resolves the frame a tuple needs: nullopt for frame-free relations, the
// compass frame for absolute ones, and the provider's answer otherwise.
std::optional<FrameOfReference> ResolveFrame(const SpatialTuple &tuple,
                                             const GridMap &map,
                                             const ForProvider &provider,
                                             const SpatialModelConfig &config);

// Normalized product of relation likelihoods, blended with a uniform field:
//   field = lambda * raw / sum(raw) + (1 - lambda) / |cells|.
// A vanishing product (sum < 1e-12) yields the uniform field. All tuples must
// share one figure.
Field LanguageLikelihoodField(const std::vector<SpatialTuple> &tuples,
                              const GridMap &map, const ForProvider &provider,
                              const SpatialModelConfig &config);

}  // namespace slsearch

#endif  // SLSEARCH_SPATIAL_MODEL_H_
