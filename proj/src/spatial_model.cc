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

#include "slsearch/spatial_model.h"

#include <algorithm>
#include <cmath>

#include "slsearch/angles.h"
#include "slsearch/errors.h"

namespace slsearch {

FrameOfReference MakeFrame(Point origin, double theta) {
  return {origin, WrapTwoPi(theta)};
}

double SpatialModelConfig::Sigma(std::string_view relation,
                                 const Landmark &ground) const {
  double multiplier = lexicon->Get(relation).sigma_multiplier;
  if (auto it = sigma_multipliers.find(std::string(relation));
      it != sigma_multipliers.end()) {
    multiplier = it->second;
  }
  return multiplier *
         (1.0 + std::sqrt(static_cast<double>(ground.cells.size())));
}

void SpatialModelConfig::Validate() const {
  if (!(mixture_weight >= 0.0 && mixture_weight <= 1.0)) {
    throw ContractViolation("mixture weight must lie in [0, 1]");
  }
  for (const auto &[relation, m] : sigma_multipliers) {
    if (!(m > 0.0)) {
      throw ContractViolation("sigma multiplier for '" + relation +
                              "' must be positive");
    }
  }
}

Vec2 RelationDirection(std::string_view relation, const FrameOfReference &frame,
                       const RelationLexicon &lexicon) {
  const RelationInfo &info = lexicon.Get(relation);
  if (!info.requires_for) {
    throw ContractViolation("relation '" + info.name +
                            "' has no frame of reference");
  }
  if (info.for_kind == ForKind::kAbsolute) return DirectionOf(frame.theta);
  return DirectionOf(frame.theta + info.angle_offset);
}

Vec2 RelationDirection(std::string_view relation,
                       const RelationLexicon &lexicon) {
  const RelationInfo &info = lexicon.Get(relation);
  if (info.for_kind != ForKind::kAbsolute) {
    throw ContractViolation("relation '" + info.name + "' is not absolute");
  }
  return DirectionOf(info.angle_offset);
}

FrameOfReference AbsoluteFor(std::string_view relation, const Landmark &ground,
                             const RelationLexicon &lexicon) {
  const RelationInfo &info = lexicon.Get(relation);
  if (info.for_kind != ForKind::kAbsolute) {
    throw ContractViolation("relation '" + info.name +
                            "' has no absolute frame");
  }
  return MakeFrame(CenterOfMass(ground), info.angle_offset);
}

namespace {

// Everything about a tuple that does not depend on the query cell.
struct PreparedRelation {
  const Landmark *ground = nullptr;
  Point ground_com;
  double sigma = 1.0;
  std::optional<Vec2> direction;
};

PreparedRelation Prepare(const SpatialTuple &tuple,
                         const std::optional<FrameOfReference> &frame,
                         const GridMap &map, const SpatialModelConfig &config) {
  PreparedRelation prep;
  prep.ground = &map.Get(tuple.ground);
  prep.ground_com = CenterOfMass(*prep.ground);
  prep.sigma = config.Sigma(tuple.relation, *prep.ground);
  const RelationInfo &info = config.lexicon->Get(tuple.relation);
  if (info.requires_for) {
    FrameOfReference f;
    if (frame) {
      f = *frame;
    } else if (info.for_kind == ForKind::kAbsolute) {
      f = AbsoluteFor(tuple.relation, *prep.ground, *config.lexicon);
    } else {
      throw ContractViolation("relation '" + tuple.relation +
                              "' needs a frame of reference");
    }
    prep.direction = RelationDirection(tuple.relation, f, *config.lexicon);
  }
  return prep;
}

RelationWeight Evaluate(const PreparedRelation &prep, const Cell &cell,
                        DotMode mode) {
  RelationWeight out;
  RelationWeightTrace &trace = out.trace;
  const Point p = ToPoint(cell);
  const ClosestCell closest = FindClosestCell(p, *prep.ground);
  trace.dist = closest.distance;
  trace.sigma = prep.sigma;
  trace.gaussian =
      std::exp(-trace.dist * trace.dist / (2.0 * prep.sigma * prep.sigma));
  trace.v = prep.direction;
  trace.dot_factor = 1.0;
  if (prep.direction && trace.dist > 0.0) {
    if (mode == DotMode::kAbs) {
      trace.u = UnitVector(p, ToPoint(closest.cell));
      if (trace.u) trace.dot_factor = std::abs(trace.u->Dot(*prep.direction));
    } else {
      trace.u = UnitVector(prep.ground_com, p);
      if (trace.u) {
        trace.dot_factor = std::max(0.0, trace.u->Dot(*prep.direction));
      }
    }
  }
  out.weight = trace.dot_factor * trace.gaussian;
  return out;
}

}  // namespace

RelationWeight RelationLikelihood(const SpatialTuple &tuple,
                                  const std::optional<FrameOfReference> &frame,
                                  const Cell &cell, const GridMap &map,
                                  const SpatialModelConfig &config) {
  return Evaluate(Prepare(tuple, frame, map, config), cell, config.dot_mode);
}

std::optional<FrameOfReference> ResolveFrame(const SpatialTuple &tuple,
                                             const GridMap &map,
                                             const ForProvider &provider,
                                             const SpatialModelConfig &config) {
  const RelationInfo &info = config.lexicon->Get(tuple.relation);
  switch (info.for_kind) {
    case ForKind::kNone:
      return std::nullopt;
    case ForKind::kAbsolute:
      return AbsoluteFor(tuple.relation, map.Get(tuple.ground),
                         *config.lexicon);
    case ForKind::kRelativeFront:
    case ForKind::kRelativeLeft:
      break;
  }
  if (!provider) {
    throw ContractViolation("relation '" + tuple.relation +
                            "' needs a frame provider");
  }
  return provider(tuple, map);
}

Field LanguageLikelihoodField(const std::vector<SpatialTuple> &tuples,
                              const GridMap &map, const ForProvider &provider,
                              const SpatialModelConfig &config) {
  config.Validate();
  const int w = map.width();
  const int h = map.height();
  if (tuples.empty()) return Field::Uniform(w, h);
  for (const SpatialTuple &t : tuples) {
    if (t.figure != tuples.front().figure) {
      throw ContractViolation("tuples describe more than one figure: '" +
                              tuples.front().figure + "' and '" + t.figure +
                              "'");
    }
  }

  std::vector<PreparedRelation> prepared;
  prepared.reserve(tuples.size());
  for (const SpatialTuple &t : tuples) {
    prepared.push_back(
        Prepare(t, ResolveFrame(t, map, provider, config), map, config));
  }

  Field raw(w, h, 1.0);
  for (int i = 0; i < raw.size(); ++i) {
    const Cell cell = map.CellAt(i);
    for (const PreparedRelation &prep : prepared) {
      raw[i] *= Evaluate(prep, cell, config.dot_mode).weight;
    }
  }
  const double total = raw.Sum();
  if (!(total >= 1e-12)) return Field::Uniform(w, h);

  const double lambda = config.mixture_weight;
  const double floor = (1.0 - lambda) / raw.size();
  for (int i = 0; i < raw.size(); ++i) {
    raw[i] = lambda * raw[i] / total + floor;
  }
  return raw;
}

}  // namespace slsearch
