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

#include "slsearch/foref/evaluation.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "slsearch/angles.h"
#include "slsearch/errors.h"
#include "slsearch/foref/loss.h"

namespace slsearch::foref {

const GridMap &CityDataset::MapNamed(const std::string &name) const {
  for (const GridMap &m : maps) {
    if (m.name() == name) return m;
  }
  throw ConfigError("city '" + this->name + "' has no map '" + name + "'");
}

double CrossvalReport::Average(const std::string &method) const {
  double sum = 0.0;
  for (const SplitResult &s : splits) sum += s.mean_deviation.at(method);
  return splits.empty() ? 0.0 : sum / static_cast<double>(splits.size());
}

CrossvalReport EvaluateCrossval(const std::vector<CityDataset> &cities,
                                const CrossvalConfig &config) {
  if (cities.size() < 5) {
    throw ConfigError("cross-validation needs at least 5 cities, got " +
                      std::to_string(cities.size()));
  }
  for (const CityDataset &c : cities) {
    int n = 0;
    for (const auto &r : c.records) n += r.kind == config.kind ? 1 : 0;
    if (n < 2) {
      throw ConfigError("city '" + c.name + "' has fewer than 2 samples");
    }
  }

  CrossvalReport report;
  for (size_t held = 0; held < cities.size(); ++held) {
    const CityDataset &test_city = cities[held];
    std::mt19937_64 rng(config.seed * 1000003ULL + held);

    // Training records from the other cities, tagged with their city.
    struct Tagged {
      const CityDataset *city;
      AnnotationRecord record;
    };
    std::vector<Tagged> pool;
    for (size_t c = 0; c < cities.size(); ++c) {
      if (c == held) continue;
      for (const auto &r : cities[c].records) {
        if (r.kind == config.kind) pool.push_back({&cities[c], r});
      }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t n_val = static_cast<size_t>(
        std::round(config.validation_fraction * pool.size()));
    n_val = std::clamp<size_t>(n_val, 1, pool.size() - 1);

    std::vector<AnnotationRecord> test_records;
    for (const auto &r : test_city.records) {
      if (r.kind == config.kind) test_records.push_back(r);
    }

    SplitResult split;
    split.city = test_city.name;
    split.test_samples = static_cast<int>(test_records.size());

    for (ContextVariant variant : config.variants) {
      std::vector<ForefSample> train;
      std::vector<ForefSample> val;
      for (size_t i = 0; i < pool.size(); ++i) {
        const CityDataset *city = pool[i].city;
        const MapLookup lookup =
            [city](const std::string &name) -> const GridMap & {
          return city->MapNamed(name);
        };
        const bool is_val = i < n_val;
        auto samples =
            BuildSamples({pool[i].record}, lookup, variant,
                         !is_val && config.train.augment, city->name);
        auto &dst = is_val ? val : train;
        dst.insert(dst.end(), std::make_move_iterator(samples.begin()),
                   std::make_move_iterator(samples.end()));
      }
      TrainConfig tc = config.train;
      tc.seed = config.train.seed + held;
      TrainResult trained = Train(train, val, config.kind, tc);
      if (config.on_model) {
        config.on_model(test_city.name, variant, trained.model);
      }
      const MapLookup test_lookup =
          [&test_city](const std::string &name) -> const GridMap & {
        return test_city.MapNamed(name);
      };
      const auto test = BuildSamples(test_records, test_lookup, variant, false,
                                     test_city.name);
      const std::string key(ContextVariantName(variant));
      split.mean_deviation[key] = MeanDeviation(trained.model, test);
      split.epochs[key] = trained.model.epochs;
    }

    std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
    double random_sum = 0.0;
    double floor_sum = 0.0;
    for (const auto &r : test_records) {
      random_sum += AngularDeviation(uniform(rng), r.label);
      const GridMap &map = test_city.MapNamed(r.map);
      const double a = SynthAnnotate(map, r.ground, config.kind,
                                     config.annotation_noise, rng);
      const double b = SynthAnnotate(map, r.ground, config.kind,
                                     config.annotation_noise, rng);
      floor_sum += AngularDeviation(a, b);
    }
    const double n = static_cast<double>(test_records.size());
    split.mean_deviation["random"] = random_sum / n;
    split.mean_deviation["noise_floor"] = floor_sum / n;
    report.splits.push_back(std::move(split));
  }
  return report;
}

FrameOfReference PredictFor(const ForefModels &models, const GridMap &map,
                            std::string_view ground_id,
                            std::string_view relation,
                            const RelationLexicon &lexicon) {
  const RelationInfo &info = lexicon.Get(relation);
  const std::optional<ForefModel> *model = nullptr;
  if (info.for_kind == ForKind::kRelativeFront) {
    model = &models.front;
  } else if (info.for_kind == ForKind::kRelativeLeft) {
    model = &models.left;
  } else {
    throw ContractViolation("relation '" + info.name +
                            "' does not take a predicted frame");
  }
  if (!model->has_value()) {
    throw ConfigError(
        std::string("missing ") +
        (info.for_kind == ForKind::kRelativeFront ? "front" : "left") +
        " model");
  }
  const Landmark &ground = map.Get(ground_id);
  const ContextImage image =
      RenderContext(map, ground_id, ContextVariant::kEgoCtx);
  return MakeFrame(CenterOfMass(ground), Predict(**model, image));
}

ForProvider ModelForProvider(std::shared_ptr<const ForefModels> models) {
  return [models](const SpatialTuple &t, const GridMap &map) {
    return PredictFor(*models, map, t.ground, t.relation);
  };
}

ForProvider OracleForProvider() {
  return [](const SpatialTuple &t, const GridMap &map) {
    const RelationInfo &info = RelationLexicon::Default().Get(t.relation);
    const ForefKind kind = info.for_kind == ForKind::kRelativeLeft
                               ? ForefKind::kLeft
                               : ForefKind::kFront;
    std::mt19937_64 unused(0);
    return MakeFrame(CenterOfMass(map.Get(t.ground)),
                     SynthAnnotate(map, t.ground, kind, 0.0, unused));
  };
}

}  // namespace slsearch::foref
