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

// Datasets, synthetic annotation, and training for the frame-of-reference
// regressor.

#ifndef SLSEARCH_FOREF_TRAINING_H_
#define SLSEARCH_FOREF_TRAINING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "slsearch/foref/network.h"
#include "slsearch/foref/render.h"
#include "slsearch/gridmap.h"

namespace slsearch::foref {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Which family of prepositions a model serves: front/behind or left/right.
enum class ForefKind { kFront, kLeft };

std::string_view ForefKindName(ForefKind kind);
ForefKind ParseForefKind(std::string_view name);

// Label oracle standing in for human annotators. Front labels point from the
// ground's center of mass toward the closest street cell (toward the map
// center when there are no streets); left labels point west. Both get
// zero-mean Gaussian noise of the given standard deviation.
double SynthAnnotate(const GridMap &map, std::string_view ground_id,
                     ForefKind kind, double noise_sigma, std::mt19937_64 &rng);

struct AnnotationRecord {
  std::string map;  // map name (or file path in dataset files)
  std::string ground;
  ForefKind kind = ForefKind::kFront;
  double label = 0.0;  // radians in [0, 2pi)
};

// Dataset JSONL: {"map", "ground", "kind", "label_radians"} per line.
std::vector<AnnotationRecord> LoadAnnotations(
    const std::filesystem::path &path);
void SaveAnnotations(const std::vector<AnnotationRecord> &records,
                     const std::filesystem::path &path);

struct ForefSample {
  ContextImage image;
  double label = 0.0;  // radians in [0, 2pi)
  std::string city;
  std::string ground_id;
};

using MapLookup = std::function<const GridMap &(const std::string &)>;

// Renders one sample per record. With augment, each record additionally
// yields re-renders of its map rotated by 90, 180 and 270 degrees with the
// label rotated to match.
std::vector<ForefSample> BuildSamples(
    const std::vector<AnnotationRecord> &records, const MapLookup &maps,
    ContextVariant variant, bool augment, const std::string &city = "");

struct TrainConfig {
  double learning_rate = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 32;
  int max_epochs = 1000;
  int patience = 20;
  bool augment = false;
  uint64_t seed = 1;

  void Validate() const;
};

// Patience-based early stopping on validation loss.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  // Records the loss of the next epoch (1-based). Returns true when training
  // should stop.
  bool Update(double val_loss);
  // True when the last Update set a new best.
  bool improved() const { return improved_; }
  int best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }
  int epoch() const { return epoch_; }

 private:
  int patience_;
  int epoch_ = 0;
  int best_epoch_ = 0;
  int since_best_ = 0;
  bool improved_ = false;
  double best_loss_ = 0.0;
};

struct ForefModel {
  ForefKind kind = ForefKind::kFront;
  ConvNet<float> net;
  int epochs = 0;
  double val_loss = 0.0;
  uint64_t seed = 0;
};

struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  int best_epoch = 0;
};

struct TrainResult {
  ForefModel model;  // parameters of the best validation epoch
  TrainHistory history;
};

// Mini-batch Adam on the mean squared angular deviation, stopping after
// `patience` epochs without validation improvement.
TrainResult Train(const std::vector<ForefSample> &train,
                  const std::vector<ForefSample> &validation, ForefKind kind,
                  const TrainConfig &config);

// Raw network output for each image (not reduced mod 2pi).
std::vector<double> Predict(const ForefModel &model,
                            const std::vector<ContextImage> &images);
double Predict(const ForefModel &model, const ContextImage &image);

// Mean angular deviation of predictions against labels.
double MeanDeviation(const ForefModel &model,
                     const std::vector<ForefSample> &samples);

// Binary weights file plus a JSON sidecar at path + ".json".
void SaveModel(const ForefModel &model, const std::filesystem::path &path);
ForefModel LoadModel(const std::filesystem::path &path);

}  // namespace slsearch::foref

#endif  // SLSEARCH_FOREF_TRAINING_H_
