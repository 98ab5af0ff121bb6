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

#include "slsearch/foref/training.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "slsearch/angles.h"
#include "slsearch/errors.h"
#include "slsearch/foref/loss.h"

namespace slsearch::foref {

std::string_view ForefKindName(ForefKind kind) {
  return kind == ForefKind::kLeft ? "left" : "front";
}

ForefKind ParseForefKind(std::string_view name) {
  if (name == "front") return ForefKind::kFront;
  if (name == "left") return ForefKind::kLeft;
  throw ConfigError("unknown frame kind '" + std::string(name) +
                    "' (expected front or left)");
}

double SynthAnnotate(const GridMap &map, std::string_view ground_id,
                     ForefKind kind, double noise_sigma, std::mt19937_64 &rng) {
  const Landmark &ground = map.Get(ground_id);
  double angle = kPi;
  if (kind == ForefKind::kFront) {
    const Point com = CenterOfMass(ground);
    std::vector<Cell> streets;
    for (const Landmark &lm : map.landmarks()) {
      if (lm.kind == LandmarkKind::kStreet) {
        streets.insert(streets.end(), lm.cells.begin(), lm.cells.end());
      }
    }
    std::optional<Vec2> dir;
    if (!streets.empty()) {
      dir = UnitVector(com, ToPoint(FindClosestCell(com, streets).cell));
    }
    if (!dir) {
      dir = UnitVector(com, {map.width() / 2.0, map.height() / 2.0});
    }
    angle = dir ? std::atan2(dir->y, dir->x) : 0.0;
  }
  if (noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sigma);
    angle += noise(rng);
  }
  return WrapTwoPi(angle);
}

std::vector<AnnotationRecord> LoadAnnotations(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset " + path.string());
  std::vector<AnnotationRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      AnnotationRecord r;
      r.map = doc.at("map").get<std::string>();
      r.ground = doc.at("ground").get<std::string>();
      r.kind = ParseForefKind(doc.at("kind").get<std::string>());
      r.label = WrapTwoPi(doc.at("label_radians").get<double>());
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return records;
}

void SaveAnnotations(const std::vector<AnnotationRecord> &records,
                     const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write dataset " + path.string());
  for (const AnnotationRecord &r : records) {
    nlohmann::json doc = {{"map", r.map},
                          {"ground", r.ground},
                          {"kind", ForefKindName(r.kind)},
                          {"label_radians", r.label}};
    out << doc.dump() << "\n";
  }
}

std::vector<ForefSample> BuildSamples(
    const std::vector<AnnotationRecord> &records, const MapLookup &maps,
    ContextVariant variant, bool augment, const std::string &city) {
  std::vector<ForefSample> samples;
  samples.reserve(records.size() * (augment ? 4 : 1));
  // Rotated copies are shared by all records on the same map.
  std::map<std::string, std::vector<GridMap>> rotations;
  for (const AnnotationRecord &r : records) {
    const GridMap &map = maps(r.map);
    samples.push_back(
        {RenderContext(map, r.ground, variant), r.label, city, r.ground});
    if (!augment) continue;
    auto &rotated = rotations[r.map];
    if (rotated.empty()) {
      for (int turns = 1; turns <= 3; ++turns) {
        rotated.push_back(RotateMap(map, turns));
      }
    }
    for (int turns = 1; turns <= 3; ++turns) {
      samples.push_back({RenderContext(rotated[turns - 1], r.ground, variant),
                         WrapTwoPi(r.label + turns * kPi / 2.0), city,
                         r.ground});
    }
  }
  return samples;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (max_epochs < 1) throw ConfigError("max epochs must be >= 1");
  if (patience < 1) throw ConfigError("patience must be >= 1");
}

bool EarlyStopping::Update(double val_loss) {
  ++epoch_;
  improved_ = epoch_ == 1 || val_loss < best_loss_;
  if (improved_) {
    best_loss_ = val_loss;
    best_epoch_ = epoch_;
    since_best_ = 0;
    return false;
  }
  return ++since_best_ >= patience_;
}

namespace {

std::vector<float> Flatten(const std::vector<const ContextImage *> &images) {
  std::vector<float> pixels;
  pixels.reserve(images.size() * kImagePixels);
  for (const ContextImage *img : images) {
    pixels.insert(pixels.end(), img->pixels.begin(), img->pixels.end());
  }
  return pixels;
}

constexpr int kEvalBatch = 128;

std::vector<double> PredictAll(
    const ConvNet<float> &net,
    const std::vector<const ContextImage *> &images) {
  std::vector<double> out;
  out.reserve(images.size());
  ConvNet<float>::Workspace ws;
  for (size_t start = 0; start < images.size(); start += kEvalBatch) {
    const size_t end = std::min(images.size(), start + kEvalBatch);
    std::vector<const ContextImage *> chunk(images.begin() + start,
                                            images.begin() + end);
    const std::vector<float> pixels = Flatten(chunk);
    const auto pred = net.Forward(pixels, static_cast<int>(chunk.size()), ws);
    out.insert(out.end(), pred.begin(), pred.end());
  }
  return out;
}

double SampleLoss(const ConvNet<float> &net,
                  const std::vector<ForefSample> &samples) {
  std::vector<const ContextImage *> images;
  std::vector<double> labels;
  for (const ForefSample &s : samples) {
    images.push_back(&s.image);
    labels.push_back(s.label);
  }
  return AngularLoss(PredictAll(net, images), labels);
}

}  // namespace

TrainResult Train(const std::vector<ForefSample> &train,
                  const std::vector<ForefSample> &validation, ForefKind kind,
                  const TrainConfig &config) {
  config.Validate();
  if (train.empty() || validation.empty()) {
    throw TrainingError("training and validation splits must be non-empty");
  }
  std::mt19937_64 rng(config.seed);
  TrainResult result;
  ForefModel &model = result.model;
  model.kind = kind;
  model.seed = config.seed;
  model.net.Initialize(rng);
  ForefModel best = model;

  Adam adam(ParameterCount(), config.learning_rate, config.beta1, config.beta2,
            config.epsilon);
  EarlyStopping stopper(config.patience);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  ConvNet<float>::Workspace ws;
  std::vector<float> grad;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(config.batch_size)) {
      const size_t end = std::min(
          order.size(), start + static_cast<size_t>(config.batch_size));
      std::vector<const ContextImage *> images;
      std::vector<double> labels;
      for (size_t i = start; i < end; ++i) {
        images.push_back(&train[order[i]].image);
        labels.push_back(train[order[i]].label);
      }
      const std::vector<float> pixels = Flatten(images);
      const int n = static_cast<int>(images.size());
      const std::vector<float> out = model.net.Forward(pixels, n, ws);
      const std::vector<double> pred(out.begin(), out.end());
      const LossAndGradient lg = AngularLossWithGradient(pred, labels);
      if (!std::isfinite(lg.loss)) {
        throw TrainingError("non-finite training loss at epoch " +
                            std::to_string(epoch));
      }
      epoch_loss += lg.loss * n;
      const std::vector<float> out_grad(lg.gradient.begin(), lg.gradient.end());
      model.net.Backward(ws, out_grad, grad);
      adam.Step(model.net.params(), grad);
    }
    epoch_loss /= static_cast<double>(order.size());
    const double val_loss = SampleLoss(model.net, validation);
    if (!std::isfinite(val_loss)) {
      throw TrainingError("non-finite validation loss at epoch " +
                          std::to_string(epoch));
    }
    result.history.train_loss.push_back(epoch_loss);
    result.history.val_loss.push_back(val_loss);
    const bool stop = stopper.Update(val_loss);
    if (stopper.improved()) {
      best.net = model.net;
      best.val_loss = val_loss;
    }
    if (stop) break;
  }
  best.kind = kind;
  best.seed = config.seed;
  best.epochs = stopper.epoch();
  result.history.best_epoch = stopper.best_epoch();
  result.model = std::move(best);
  return result;
}

std::vector<double> Predict(const ForefModel &model,
                            const std::vector<ContextImage> &images) {
  std::vector<const ContextImage *> ptrs;
  for (const ContextImage &img : images) ptrs.push_back(&img);
  return PredictAll(model.net, ptrs);
}

double Predict(const ForefModel &model, const ContextImage &image) {
  return PredictAll(model.net, {&image}).front();
}

double MeanDeviation(const ForefModel &model,
                     const std::vector<ForefSample> &samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<const ContextImage *> images;
  for (const ForefSample &s : samples) images.push_back(&s.image);
  const std::vector<double> pred = PredictAll(model.net, images);
  double sum = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    sum += AngularDeviation(pred[i], samples[i].label);
  }
  return sum / static_cast<double>(samples.size());
}

namespace {

constexpr char kMagic[] = {'F', 'O', 'R', 'E', 'F', '1'};

void WriteU32(std::ostream &out, uint32_t v) {
  const unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xff),
                                  static_cast<unsigned char>((v >> 8) & 0xff),
                                  static_cast<unsigned char>((v >> 16) & 0xff),
                                  static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char *>(bytes), 4);
}

uint32_t ReadU32(std::istream &in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char *>(bytes), 4)) {
    throw ConfigError("truncated weights file");
  }
  return uint32_t{bytes[0]} | (uint32_t{bytes[1]} << 8) |
         (uint32_t{bytes[2]} << 16) | (uint32_t{bytes[3]} << 24);
}

}  // namespace

void SaveModel(const ForefModel &model, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write weights file " + path.string());
  out.write(kMagic, sizeof(kMagic));
  const auto &layout = ParameterLayout();
  WriteU32(out, static_cast<uint32_t>(layout.size()));
  for (const TensorInfo &t : layout) {
    for (uint32_t d : t.shape) WriteU32(out, d);
  }
  for (float v : model.net.params()) {
    uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    WriteU32(out, bits);
  }

  std::ofstream sidecar(path.string() + ".json");
  if (!sidecar) {
    throw ConfigError("cannot write sidecar for " + path.string());
  }
  nlohmann::json meta = {{"variant", ForefKindName(model.kind)},
                         {"epochs", model.epochs},
                         {"val_loss", model.val_loss},
                         {"seed", model.seed}};
  sidecar << meta.dump(1) << "\n";
}

ForefModel LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing model file " + path.string());
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ConfigError(path.string() + " is not a FOREF1 weights file");
  }
  const auto &layout = ParameterLayout();
  if (ReadU32(in) != layout.size()) {
    throw ConfigError(path.string() + ": unexpected tensor count");
  }
  for (const TensorInfo &t : layout) {
    for (uint32_t d : t.shape) {
      if (ReadU32(in) != d) {
        throw ConfigError(path.string() + ": shape mismatch in " +
                          std::string(t.name));
      }
    }
  }
  ForefModel model;
  for (float &v : model.net.params()) {
    const uint32_t bits = ReadU32(in);
    std::memcpy(&v, &bits, sizeof(v));
  }

  std::ifstream sidecar(path.string() + ".json");
  if (!sidecar) {
    throw ConfigError("missing sidecar " + path.string() + ".json");
  }
  try {
    nlohmann::json meta;
    sidecar >> meta;
    model.kind = ParseForefKind(meta.at("variant").get<std::string>());
    model.epochs = meta.at("epochs").get<int>();
    model.val_loss = meta.at("val_loss").get<double>();
    model.seed = meta.at("seed").get<uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError("bad sidecar for " + path.string() + ": " + e.what());
  }
  return model;
}

}  // namespace slsearch::foref
