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

// Cross-city evaluation of frame-of-reference predictors, and the glue that
// lets trained models supply frames to the spatial language model.

#ifndef SLSEARCH_FOREF_EVALUATION_H_
#define SLSEARCH_FOREF_EVALUATION_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slsearch/foref/training.h"
#include "slsearch/spatial_model.h"

namespace slsearch::foref {

struct CityDataset {
  std::string name;
  std::vector<GridMap> maps;
  std::vector<AnnotationRecord> records;  // record.map names one of maps

  const GridMap &MapNamed(const std::string &name) const;
};

struct CrossvalConfig {
  ForefKind kind = ForefKind::kFront;
  TrainConfig train;
  std::vector<ContextVariant> variants = {
      ContextVariant::kEgoCtx, ContextVariant::kCtx, ContextVariant::kEgo};
  // Noise of the label oracle, used for the annotator-disagreement floor.
  double annotation_noise = 0.2;
  // Share of the training cities' records held back for early stopping.
  double validation_fraction = 0.2;
  uint64_t seed = 1;
  // Called with (held-out city, variant, model) after each training run.
  std::function<void(const std::string &, ContextVariant, const ForefModel &)>
      on_model;
};

struct SplitResult {
  std::string city;
  int test_samples = 0;
  // Keys: ego_ctx, ctx, ego (as configured), random, noise_floor.
  std::map<std::string, double> mean_deviation;
  std::map<std::string, int> epochs;
};

struct CrossvalReport {
  std::vector<SplitResult> splits;

  // Average over splits of one method's mean deviation.
  double Average(const std::string &method) const;
};

// Leave-one-city-out evaluation over at least five cities.
CrossvalReport EvaluateCrossval(const std::vector<CityDataset> &cities,
                                const CrossvalConfig &config);

struct ForefModels {
  std::optional<ForefModel> front;
  std::optional<ForefModel> left;
};

// Frame for a relative relation: origin at the ground's center of mass, angle
// from the front model (front/behind) or left model (left/right). Throws
// ContractViolation for other relations and ConfigError for a missing model.
FrameOfReference PredictFor(
    const ForefModels &models, const GridMap &map, std::string_view ground_id,
    std::string_view relation,
    const RelationLexicon &lexicon = RelationLexicon::Default());

ForProvider ModelForProvider(std::shared_ptr<const ForefModels> models);

// Frames from the noiseless label oracle.
ForProvider OracleForProvider();

}  // namespace slsearch::foref

#endif  // SLSEARCH_FOREF_EVALUATION_H_
