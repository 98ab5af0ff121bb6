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

// Command line entry point: maps, parsing, beliefs, frame-of-reference
// models, single trials and benchmark suites.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "json.hpp"
#include "slsearch/angles.h"
#include "slsearch/errors.h"
#include "slsearch/foref/evaluation.h"
#include "slsearch/foref/training.h"
#include "slsearch/gridmap.h"
#include "slsearch/harness/generators.h"
#include "slsearch/harness/report.h"
#include "slsearch/harness/suite.h"
#include "slsearch/harness/trial.h"
#include "slsearch/langparse.h"
#include "slsearch/spatial_model.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slsearch;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

json ReadJson(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

json TuplesJson(const std::vector<SpatialTuple> &tuples) {
  json out = json::array();
  for (const SpatialTuple &t : tuples) {
    out.push_back({t.figure, t.relation, t.ground});
  }
  return out;
}

Vocabulary TargetsOrDefault(const std::string &path) {
  if (path.empty()) return {};
  return LoadTargetVocabulary(path);
}

ForProvider MakeProvider(const std::string &front, const std::string &left) {
  if (front.empty() && left.empty()) return foref::OracleForProvider();
  auto models = std::make_shared<foref::ForefModels>();
  if (!front.empty()) models->front = foref::LoadModel(front);
  if (!left.empty()) models->left = foref::LoadModel(left);
  return foref::ModelForProvider(models);
}

// Resolves a map reference relative to the file that mentions it.
void EnsureParent(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

fs::path Relative(const fs::path &base_file, const std::string &ref) {
  fs::path p(ref);
  if (p.is_absolute() || fs::exists(p)) return p;
  return base_file.parent_path() / p;
}

struct Options {
  // map
  uint64_t seed = 1;
  int width = 41;
  int height = 41;
  std::string out;
  std::string map;
  // parse / belief
  std::string text;
  std::string targets;
  std::string target;
  std::string front_model;
  std::string left_model;
  std::string svg;
  // foref
  std::string data;
  std::string kind = "front";
  std::string variant = "ego_ctx";
  std::string model;
  std::string ground;
  int cities = 5;
  int maps_per_city = 6;
  double noise = 0.2;
  foref::TrainConfig train;
  double validation_fraction = 0.2;
  // search / bench
  std::string config;
  std::string diagnostics;
  int threads = 0;
};

int MapGenerate(const Options &o) {
  const GridMap map = GenerateCity(o.seed, o.width, o.height);
  if (o.out.empty()) {
    std::cout << MapToJson(map).dump(1) << "\n";
  } else {
    EnsureParent(o.out);
    SaveMap(map, o.out);
  }
  return 0;
}

int MapValidate(const Options &o) {
  const GridMap map = LoadMap(o.map);
  int buildings = 0;
  for (const Landmark &lm : map.landmarks()) {
    buildings += lm.kind == LandmarkKind::kBuilding ? 1 : 0;
  }
  fmt::print("{}: {}x{}, {} landmarks ({} buildings)\n", map.name(),
             map.width(), map.height(), map.landmarks().size(), buildings);
  return 0;
}

int Parse(const Options &o) {
  const GridMap map = LoadMap(o.map);
  const SpatialLanguageObservation obs =
      ExtractTuples(o.text, map, TargetsOrDefault(o.targets));
  std::cout << json{{"text", obs.source_text},
                    {"tuples", TuplesJson(obs.tuples)}}
                   .dump()
            << "\n";
  return 0;
}

int BeliefCmd(const Options &o) {
  const GridMap map = LoadMap(o.map);
  const Vocabulary vocab = TargetsOrDefault(o.targets);
  const SpatialLanguageObservation obs = ExtractTuples(o.text, map, vocab);
  std::string figure = o.target;
  if (figure.empty()) {
    if (obs.tuples.empty()) throw ConfigError("language: no tuples found");
    figure = obs.tuples.front().figure;
  }
  const std::vector<SpatialTuple> tuples = obs.ForFigure(figure);
  SpatialModelConfig config;
  const Field field =
      tuples.empty()
          ? UniformPrior(map)
          : LanguageLikelihoodField(
                tuples, map, MakeProvider(o.front_model, o.left_model), config);
  WriteText(o.out, FieldCsv(field));
  const fs::path svg = o.svg.empty() ? fs::path(o.out).replace_extension(".svg")
                                     : fs::path(o.svg);
  WriteText(svg, HeatmapSvg(field, &map));
  std::cout << json{{"figure", figure},
                    {"tuples", TuplesJson(tuples)},
                    {"csv", o.out},
                    {"svg", svg.string()}}
                   .dump()
            << "\n";
  return 0;
}

int ForefSynth(const Options &o) {
  if (o.out.empty()) throw ConfigError("--out: directory required");
  const fs::path dir(o.out);
  fs::create_directories(dir / "maps");
  std::vector<foref::AnnotationRecord> all;
  for (int c = 0; c < o.cities; ++c) {
    const foref::CityDataset city = GenerateCityDataset(
        "city" + std::to_string(c), o.seed * 1000 + c, o.maps_per_city,
        {foref::ForefKind::kFront, foref::ForefKind::kLeft}, o.noise, o.width,
        o.height);
    for (const GridMap &map : city.maps) {
      SaveMap(map, dir / "maps" / (map.name() + ".json"));
    }
    for (foref::AnnotationRecord r : city.records) {
      r.map = "maps/" + r.map + ".json";
      all.push_back(std::move(r));
    }
  }
  foref::SaveAnnotations(all, dir / "annotations.jsonl");
  fmt::print("{} records, {} maps written to {}\n", all.size(),
             o.cities * o.maps_per_city, dir.string());
  return 0;
}

class MapCache {
 public:
  explicit MapCache(fs::path dataset) : dataset_(std::move(dataset)) {}
  const GridMap &operator()(const std::string &ref) {
    auto it = maps_.find(ref);
    if (it == maps_.end()) {
      it = maps_.emplace(ref, LoadMap(Relative(dataset_, ref))).first;
    }
    return it->second;
  }

 private:
  fs::path dataset_;
  std::map<std::string, GridMap> maps_;
};

std::vector<foref::AnnotationRecord> RecordsOfKind(const std::string &path,
                                                   foref::ForefKind kind) {
  std::vector<foref::AnnotationRecord> out;
  for (auto &r : foref::LoadAnnotations(path)) {
    if (r.kind == kind) out.push_back(std::move(r));
  }
  if (out.empty()) throw ConfigError("--data: no records of the given kind");
  return out;
}

int ForefTrain(const Options &o) {
  if (o.out.empty()) throw ConfigError("--out: model path required");
  const foref::ForefKind kind = foref::ParseForefKind(o.kind);
  const foref::ContextVariant variant = foref::ParseContextVariant(o.variant);
  auto records = RecordsOfKind(o.data, kind);
  std::mt19937_64 rng(o.train.seed);
  std::shuffle(records.begin(), records.end(), rng);
  const size_t n_val = std::max<size_t>(
      1, static_cast<size_t>(records.size() * o.validation_fraction));
  if (n_val >= records.size()) throw ConfigError("--data: too few records");
  std::vector<foref::AnnotationRecord> val(records.begin(),
                                           records.begin() + n_val);
  std::vector<foref::AnnotationRecord> train(records.begin() + n_val,
                                             records.end());
  MapCache maps(o.data);
  const foref::MapLookup lookup =
      [&](const std::string &ref) -> const GridMap & { return maps(ref); };
  const auto train_samples =
      foref::BuildSamples(train, lookup, variant, o.train.augment);
  const auto val_samples = foref::BuildSamples(val, lookup, variant, false);
  const foref::TrainResult result =
      foref::Train(train_samples, val_samples, kind, o.train);
  EnsureParent(o.out);
  foref::SaveModel(result.model, o.out);
  fmt::print("trained {} model: {} epochs, best validation loss {:.4f}\n",
             o.kind, result.model.epochs, result.model.val_loss);
  return 0;
}

int ForefEval(const Options &o) {
  const foref::ForefModel model = foref::LoadModel(o.model);
  const auto records = RecordsOfKind(o.data, model.kind);
  MapCache maps(o.data);
  const foref::MapLookup lookup =
      [&](const std::string &ref) -> const GridMap & { return maps(ref); };
  const auto samples = foref::BuildSamples(
      records, lookup, foref::ParseContextVariant(o.variant), false);
  std::cout << json{{"samples", samples.size()},
                    {"mean_deviation", foref::MeanDeviation(model, samples)}}
                   .dump()
            << "\n";
  return 0;
}

int ForefPredict(const Options &o) {
  const foref::ForefModel model = foref::LoadModel(o.model);
  const GridMap map = LoadMap(o.map);
  const double angle = foref::Predict(
      model, foref::RenderContext(map, o.ground,
                                  foref::ParseContextVariant(o.variant)));
  std::cout << json{{"ground", o.ground},
                    {"kind", foref::ForefKindName(model.kind)},
                    {"theta", WrapTwoPi(angle)}}
                   .dump()
            << "\n";
  return 0;
}

int SearchRun(const Options &o) {
  const fs::path path(o.config);
  const json doc = ReadJson(path);
  const TrialConfig config = ParseTrialConfig(doc);
  const GridMap map = LoadMap(Relative(path, config.map));
  TrialContext context;
  context.map = &map;
  if (!o.targets.empty())
    context.target_vocabulary = LoadTargetVocabulary(o.targets);
  std::string front = o.front_model;
  std::string left = o.left_model;
  if (doc.contains("for_models")) {
    const json &m = doc.at("for_models");
    if (front.empty() && m.contains("front")) {
      front = Relative(path, m.at("front").get<std::string>()).string();
    }
    if (left.empty() && m.contains("left")) {
      left = Relative(path, m.at("left").get<std::string>()).string();
    }
  }
  context.for_provider = MakeProvider(front, left);
  std::ofstream diag;
  if (!o.diagnostics.empty()) {
    diag.open(o.diagnostics);
    if (!diag) throw ConfigError("cannot write " + o.diagnostics);
    context.diagnostics = [&](const json &line) {
      diag << line.dump() << "\n";
    };
  }
  const TrialResult r = RunTrial(config, context);
  std::cout << json{{"trial_id", r.trial_id},
                    {"baseline", PriorModeName(r.baseline)},
                    {"depth", r.depth},
                    {"seed", r.seed},
                    {"steps", r.steps},
                    {"success", r.success},
                    {"discounted_reward", r.discounted_reward},
                    {"language", r.language},
                    {"tuples", TuplesJson(r.tuples)}}
                   .dump()
            << "\n";
  return 0;
}

int Bench(const Options &o) {
  const fs::path path(o.config);
  SuiteConfig config = ParseSuiteConfig(ReadJson(path));
  if (o.threads > 0) config.threads = o.threads;
  const fs::path out = o.out.empty() ? fs::path("bench_out") : fs::path(o.out);
  const std::string front = config.front_model.empty()
                                ? ""
                                : Relative(path, config.front_model).string();
  const std::string left = config.left_model.empty()
                               ? ""
                               : Relative(path, config.left_model).string();
  const SuiteReport report =
      RunSuite(config, MakeProvider(front, left), out / "heatmaps");
  WriteSuiteOutputs(report, out);
  std::cout << SummaryCsv(report);
  if (report.failures > 0) {
    fmt::print(stderr, "{} of {} trials failed\n", report.failures,
               report.trials.size());
    for (const TrialResult &t : report.trials) {
      if (!t.error.empty())
        fmt::print(stderr, "  trial {}: {}\n", t.trial_id, t.error);
    }
    return kExitPartial;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spatial-language object search toolkit"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options &) = nullptr;
  auto on = [&](CLI::App *cmd, int (*fn)(const Options &)) {
    cmd->callback([&handler, fn] { handler = fn; });
  };

  CLI::App *map_cmd = app.add_subcommand("map", "Generate or validate maps");
  map_cmd->require_subcommand(1);
  CLI::App *gen = map_cmd->add_subcommand("generate", "Generate a city map");
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--width", o.width, "Width in cells");
  gen->add_option("--height", o.height, "Height in cells");
  gen->add_option("--out", o.out, "Output map JSON (stdout when omitted)");
  on(gen, MapGenerate);
  CLI::App *val = map_cmd->add_subcommand("validate", "Validate a map file");
  val->add_option("map", o.map, "Map JSON")->required();
  on(val, MapValidate);

  CLI::App *parse = app.add_subcommand("parse", "Extract spatial tuples");
  parse->add_option("text", o.text, "Description")->required();
  parse->add_option("--map", o.map, "Map JSON")->required();
  parse->add_option("--targets", o.targets, "Target vocabulary JSON");
  on(parse, Parse);

  CLI::App *belief = app.add_subcommand("belief", "Language likelihood field");
  belief->add_option("--map", o.map, "Map JSON")->required();
  belief->add_option("--language", o.text, "Description")->required();
  belief->add_option("--out", o.out, "Field CSV")->required();
  belief->add_option("--svg", o.svg, "Heatmap SVG (default: CSV path .svg)");
  belief->add_option("--targets", o.targets, "Target vocabulary JSON");
  belief->add_option("--target", o.target, "Figure id (default: first)");
  belief->add_option("--front-model", o.front_model, "Front FoR model");
  belief->add_option("--left-model", o.left_model, "Left FoR model");
  on(belief, BeliefCmd);

  CLI::App *foref_cmd =
      app.add_subcommand("foref", "Frame-of-reference models");
  foref_cmd->require_subcommand(1);
  CLI::App *synth = foref_cmd->add_subcommand("synth", "Synthetic dataset");
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--seed", o.seed, "Seed");
  synth->add_option("--cities", o.cities, "Number of cities");
  synth->add_option("--maps-per-city", o.maps_per_city, "Maps per city");
  synth->add_option("--noise", o.noise, "Annotator noise (radians)");
  on(synth, ForefSynth);
  CLI::App *train = foref_cmd->add_subcommand("train", "Train a model");
  train->add_option("--data", o.data, "Dataset JSONL")->required();
  train->add_option("--out", o.out, "Model file")->required();
  train->add_option("--kind", o.kind, "front or left");
  train->add_option("--variant", o.variant, "ego_ctx, ctx or ego");
  train->add_option("--lr", o.train.learning_rate, "Learning rate");
  train->add_option("--epochs", o.train.max_epochs, "Maximum epochs");
  train->add_option("--patience", o.train.patience, "Early stopping patience");
  train->add_option("--batch", o.train.batch_size, "Batch size");
  train->add_option("--seed", o.train.seed, "Seed");
  train->add_flag("--augment", o.train.augment, "Add rotated copies");
  train->add_option("--validation", o.validation_fraction,
                    "Validation fraction");
  on(train, ForefTrain);
  CLI::App *eval = foref_cmd->add_subcommand("eval", "Mean angular deviation");
  eval->add_option("--model", o.model, "Model file")->required();
  eval->add_option("--data", o.data, "Dataset JSONL")->required();
  eval->add_option("--variant", o.variant, "ego_ctx, ctx or ego");
  on(eval, ForefEval);
  CLI::App *predict = foref_cmd->add_subcommand("predict", "Predict a frame");
  predict->add_option("--model", o.model, "Model file")->required();
  predict->add_option("--map", o.map, "Map JSON")->required();
  predict->add_option("--ground", o.ground, "Landmark id")->required();
  predict->add_option("--variant", o.variant, "ego_ctx, ctx or ego");
  on(predict, ForefPredict);

  CLI::App *search = app.add_subcommand("search", "Run search trials");
  search->require_subcommand(1);
  CLI::App *run = search->add_subcommand("run", "Run one trial");
  run->add_option("trial", o.config, "Trial JSON")->required();
  run->add_option("--targets", o.targets, "Target vocabulary JSON");
  run->add_option("--front-model", o.front_model, "Front FoR model");
  run->add_option("--left-model", o.left_model, "Left FoR model");
  run->add_option("--diagnostics", o.diagnostics, "Per-step planner JSONL");
  on(run, SearchRun);

  CLI::App *bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("suite", o.config, "Suite JSON")->required();
  bench->add_option("--out", o.out, "Output directory (default bench_out)");
  bench->add_option("--threads", o.threads, "Worker threads");
  on(bench, Bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    return handler(o);
  } catch (const ConfigError &e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const MapError &e) {
    fmt::print(stderr, "map error: {}\n", e.what());
    return kExitConfig;
  } catch (const LexiconError &e) {
    fmt::print(stderr, "lexicon error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception &e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
