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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "json.hpp"
#include "oracles.h"
#include "slsearch/angles.h"
#include "slsearch/foref/evaluation.h"
#include "slsearch/foref/loss.h"
#include "slsearch/harness/generators.h"
#include "slsearch/harness/report.h"
#include "slsearch/harness/suite.h"
#include "slsearch/langparse.h"
#include "slsearch/mos_pomdp.h"
#include "slsearch/planner.h"
#include "slsearch/spatial_model.h"

namespace slsearch {
namespace {

namespace fs = std::filesystem;

// Tolerances and budgets.
constexpr double kModelTolerance = 1e-9;
constexpr double kModelBudgetSeconds = 1.0;
constexpr int kLossPropertyChecks = 10000;
constexpr double kFilterTolerance = 1e-9;
constexpr int kFilterEpisodes = 100;
constexpr double kFilterBudgetSeconds = 10.0;
constexpr double kGradientTolerance = 1e-3;
constexpr double kGradientBudgetSeconds = 60.0;
constexpr double kForefMaxDeviation = 0.8;
constexpr double kRandomTolerance = 0.05;
constexpr double kForefBudgetSeconds = 30 * 60.0;
constexpr int kPlannerSeeds = 50;
constexpr double kPlannerShare = 0.9;
constexpr double kPlannerBudgetSeconds = 60.0;
constexpr double kDominanceShare = 0.9;
constexpr double kSuiteBudgetSeconds = 2 * 3600.0;

// FoR training setup shared by the cross-validation and the slu baseline.
constexpr int kForefCities = 5;
constexpr int kForefMapsPerCity = 10;
constexpr double kAnnotationNoise = 0.2;
constexpr double kForefLearningRate = 1e-3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  fs::path out = "acceptance_out";
  fs::path data;
  fs::path cli;
  std::set<int> only;
  int threads = 1;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ForProvider FixedFrames(double theta) {
  return [theta](const SpatialTuple &t, const GridMap &map) {
    return MakeFrame(CenterOfMass(map.Get(t.ground)), theta);
  };
}

GridMap RandomMap(std::mt19937_64 &rng, int width, int height, int n) {
  std::vector<Landmark> landmarks;
  std::uniform_int_distribution<int> x(0, width - 1), y(0, height - 1);
  std::uniform_int_distribution<int> size(1, 3);
  for (int k = 0; k < n; ++k) {
    const int x0 = x(rng), y0 = y(rng);
    const int x1 = std::min(width - 1, x0 + size(rng) - 1);
    const int y1 = std::min(height - 1, y0 + size(rng) - 1);
    Landmark lm{"B" + std::to_string(k), LandmarkKind::kBuilding, {}, {}};
    for (int cx = x0; cx <= x1; ++cx) {
      for (int cy = y0; cy <= y1; ++cy) lm.cells.push_back({cx, cy});
    }
    landmarks.push_back(std::move(lm));
  }
  return GridMap("random", width, height, 5.0, std::move(landmarks));
}

Outcome ObservationModel(const Options &) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;

  const GridMap single("m", 21, 21, 5.0,
                       {{"G", LandmarkKind::kBuilding, {"g"}, {{10, 10}}}});
  SpatialModelConfig config;
  config.sigma_multipliers["near"] = 1.0;
  config.sigma_multipliers["front"] = 1.0;
  const double sigma = config.Sigma("near", single.Get("G"));
  auto weight = [&](const std::string &relation, const Cell &cell) {
    return RelationLikelihood({"f", relation, "G"},
                              MakeFrame(Point{10, 10}, 0.0), cell, single,
                              config)
        .weight;
  };
  worst = std::max(worst, std::abs(weight("near", {10, 10}) - 1.0));
  worst = std::max(
      worst, std::abs(weight("near", {10 + int(sigma), 10}) - std::exp(-0.5)));
  worst = std::max(worst, std::abs(weight("front", {10, 12})));
  worst = std::max(worst, std::abs(weight("front", {12, 10}) - std::exp(-0.5)));

  std::mt19937_64 rng(2024);
  const std::vector<std::string> relations = {"near",   "at",        "front",
                                              "behind", "left",      "right",
                                              "north",  "southwest", "beside"};
  std::uniform_int_distribution<size_t> pick(0, relations.size() - 1);
  const RelationLexicon &lexicon = RelationLexicon::Default();
  int maps = 0;
  for (; maps < 200; ++maps) {
    const GridMap map = RandomMap(rng, 10, 10, 3);
    const double theta = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
    const bool rectified = maps % 2 == 0;
    SpatialModelConfig cfg;
    cfg.dot_mode = rectified ? DotMode::kRectified : DotMode::kAbs;
    cfg.mixture_weight = maps % 3 == 0 ? 1.0 : 0.9;
    std::vector<SpatialTuple> tuples;
    std::vector<oracle::Tuple> reference;
    for (int k = 0; k < 1 + maps % 3; ++k) {
      const std::string r = relations[pick(rng)];
      const std::string g = "B" + std::to_string(k);
      tuples.push_back({"f", r, g});
      const RelationInfo &info = lexicon.Get(r);
      const Landmark &lm = map.Get(g);
      double angle = info.angle_offset;
      if (info.for_kind == ForKind::kRelativeFront ||
          info.for_kind == ForKind::kRelativeLeft) {
        angle += theta;
      }
      reference.push_back(
          {lm.cells,
           info.sigma_multiplier * (1 + std::sqrt(double(lm.cells.size()))),
           info.requires_for, std::cos(angle), std::sin(angle)});
    }
    const Field field =
        LanguageLikelihoodField(tuples, map, FixedFrames(theta), cfg);
    const auto expected =
        oracle::LanguageField(reference, 10, 10, rectified, cfg.mixture_weight);
    for (int i = 0; i < 100; ++i) {
      worst = std::max(worst, std::abs(field[i] - expected[i]));
    }
  }
  const double seconds = Seconds(start);
  return {
      worst <= kModelTolerance && seconds < kModelBudgetSeconds,
      fmt::format("closed forms and {} brute-force maps, max error {:.2e} "
                  "(tol {:.0e}), {:.3f} s (budget {} s)",
                  maps, worst, kModelTolerance, seconds, kModelBudgetSeconds)};
}

Outcome LossIdentities(const Options &) {
  using foref::AngularDeviation;
  using foref::AngularLoss;
  bool exact = AngularDeviation(0.5, 0.0) == 0.5 &&
               std::abs(AngularDeviation(kTwoPi - 0.5, 0.0) - 0.5) < 1e-12 &&
               AngularDeviation(kPi, 0.0) == kPi;
  const std::vector<double> same = {0.3, 1.7, 5.9};
  exact = exact && AngularLoss(same, same) == 0.0;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  std::uniform_int_distribution<int> turns(-3, 3);
  int violations = 0;
  for (int i = 0; i < kLossPropertyChecks; ++i) {
    const std::vector<double> a = {angle(rng), angle(rng)};
    const std::vector<double> b = {angle(rng), angle(rng)};
    const std::vector<double> shifted = {a[0] + kTwoPi * turns(rng),
                                         a[1] + kTwoPi * turns(rng)};
    const double l = AngularLoss(a, b);
    const bool ok = l >= 0.0 && std::abs(l - AngularLoss(b, a)) < 1e-9 &&
                    std::abs(l - AngularLoss(shifted, b)) < 1e-9 &&
                    AngularDeviation(a[0], b[0]) <= kPi;
    violations += ok ? 0 : 1;
  }
  return {
      exact && violations == 0,
      fmt::format("examples {}, {} randomized checks, {} violations",
                  exact ? "exact" : "wrong", kLossPropertyChecks, violations)};
}

Outcome ExactFiltering(const Options &) {
  const auto start = std::chrono::steady_clock::now();
  const GridMap map("empty", 10, 10, 5.0, {});
  double worst = 0.0;
  for (int seed = 0; seed < kFilterEpisodes; ++seed) {
    std::mt19937_64 rng(seed + 5000);
    SensorConfig sensor;
    sensor.depth = 3 + seed % 3;
    sensor.false_negative_rate = seed % 2 == 0 ? 0.0 : 0.3;
    const MosModel model(map, 2, sensor);
    const oracle::BayesFilter filter{10, 10, sensor.depth,
                                     sensor.false_negative_rate};
    std::vector<Field> priors;
    std::vector<std::vector<double>> expected;
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int t = 0; t < 2; ++t) {
      Field f(10, 10);
      for (double &v : f.values()) v = u(rng);
      f.Normalize();
      expected.push_back(f.values());
      priors.push_back(std::move(f));
    }
    std::uniform_int_distribution<int> coord(0, 9), heading(0, 7), act(0, 5);
    MosState state{{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}},
                   {coord(rng), coord(rng), heading(rng)},
                   0};
    Belief belief = InitBelief(priors, state.robot);
    RobotPose pose = state.robot;
    for (int step = 0; step < 3; ++step) {
      const Action action = model.actions()[act(rng)];
      state = model.Transition(state, action);
      const SensorObservation o = model.Observe(state, rng);
      belief = BeliefUpdate(belief, action, o, model);
      pose = filter.Move(pose, action.kind);
      if (!(belief.robot == pose)) worst = 1.0;
      for (int t = 0; t < 2; ++t) {
        if (o.found >> t & 1u) continue;
        expected[t] = filter.Update(expected[t], pose, o.detections[t]);
        for (int i = 0; i < 100; ++i) {
          worst =
              std::max(worst, std::abs(expected[t][i] - belief.targets[t][i]));
        }
      }
    }
  }
  const double seconds = Seconds(start);
  return {worst <= kFilterTolerance && seconds < kFilterBudgetSeconds,
          fmt::format("{} three-step episodes, max error {:.2e} (tol {:.0e}), "
                      "{:.3f} s (budget {} s)",
                      kFilterEpisodes, worst, kFilterTolerance, seconds,
                      kFilterBudgetSeconds)};
}

Outcome GradientCheck(const Options &) {
  const auto start = std::chrono::steady_clock::now();
  const oracle::GradientReport report = oracle::CheckGradients(7, 8, 25);
  double worst = 0.0;
  bool complete = report.parameters.size() == 25;
  std::string per_layer;
  for (const auto &t : report.tensors) {
    worst = std::max(worst, t.relative_error);
    complete = complete && t.checked == 8;
    per_layer += fmt::format(" {}={:.1e}", t.name, t.relative_error);
  }
  for (double e : report.parameters) worst = std::max(worst, e);
  const double seconds = Seconds(start);
  return {complete && worst <= kGradientTolerance &&
              seconds < kGradientBudgetSeconds,
          fmt::format("max relative error {:.2e} (tol {:.0e}), {:.1f} s;{}",
                      worst, kGradientTolerance, seconds, per_layer)};
}

std::vector<foref::CityDataset> ForefCities() {
  std::vector<foref::CityDataset> cities;
  for (int c = 0; c < kForefCities; ++c) {
    cities.push_back(GenerateCityDataset(
        "forcity" + std::to_string(c), 7000 + c, kForefMapsPerCity,
        {foref::ForefKind::kFront, foref::ForefKind::kLeft}, kAnnotationNoise));
  }
  return cities;
}

foref::TrainConfig ForefTrainConfig() {
  foref::TrainConfig train;
  train.learning_rate = kForefLearningRate;
  train.augment = true;
  return train;
}

Outcome ForefLearning(const Options &options) {
  const auto start = std::chrono::steady_clock::now();
  foref::CrossvalConfig config;
  config.kind = foref::ForefKind::kFront;
  config.train = ForefTrainConfig();
  config.annotation_noise = kAnnotationNoise;
  const foref::CrossvalReport report =
      foref::EvaluateCrossval(ForefCities(), config);
  bool pass = true;
  std::string csv = "city,test_samples,ego_ctx,ctx,ego,random,noise_floor\n";
  std::string detail;
  for (const foref::SplitResult &s : report.splits) {
    const double ego_ctx = s.mean_deviation.at("ego_ctx");
    const double random = s.mean_deviation.at("random");
    pass = pass && ego_ctx < kForefMaxDeviation && ego_ctx < random &&
           ego_ctx < kPi / 2 - kRandomTolerance;
    csv += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", s.city,
                       s.test_samples, ego_ctx, s.mean_deviation.at("ctx"),
                       s.mean_deviation.at("ego"), random,
                       s.mean_deviation.at("noise_floor"));
    detail += fmt::format(" {}: ego_ctx {:.3f} random {:.3f};", s.city, ego_ctx,
                          random);
  }
  WriteText(options.out / "crossval.csv", csv);

  // Random baseline agrees with its expectation over many draws.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    sum += foref::AngularDeviation(uniform(rng), uniform(rng));
  }
  const double random_mean = sum / 100000;
  const double ego = report.Average("ego");
  const double ego_ctx = report.Average("ego_ctx");
  const double seconds = Seconds(start);
  pass = pass && std::abs(random_mean - kPi / 2) <= kRandomTolerance &&
         !(ego < ego_ctx) && seconds < kForefBudgetSeconds;
  return {pass,
          fmt::format("averages ego_ctx {:.3f} ctx {:.3f} ego {:.3f} "
                      "random {:.3f} floor {:.3f}; random over 1e5 "
                      "draws {:.3f};{} {:.0f} s (budget {:.0f} s)",
                      ego_ctx, report.Average("ctx"), ego,
                      report.Average("random"), report.Average("noise_floor"),
                      random_mean, detail, seconds, kForefBudgetSeconds)};
}

Outcome PlannerSanity(const Options &) {
  const auto start = std::chrono::steady_clock::now();
  const GridMap map("empty", 7, 7, 5.0, {});
  const MosModel model(map, 1, SensorConfig{});
  PlannerConfig config;
  config.max_depth = 3;
  int optimal = 0;
  for (int seed = 0; seed < kPlannerSeeds; ++seed) {
    std::mt19937_64 rng(seed + 100);
    std::uniform_int_distribution<int> coord(0, 6), heading(0, 7), count(1, 3);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    const RobotPose robot{coord(rng), coord(rng), heading(rng)};
    Field prior(7, 7);
    for (int k = count(rng); k > 0; --k) {
      prior.at({coord(rng), coord(rng)}) += weight(rng);
    }
    prior.Normalize();
    const Belief belief = InitBelief({prior}, robot);
    std::vector<double> values;
    const double best =
        oracle::Expectimax(belief, model, 3, config.discount, &values);
    const Action chosen = Plan(belief, model, config, rng).action;
    for (size_t a = 0; a < values.size(); ++a) {
      if (model.actions()[a] == chosen && values[a] >= best - 1e-6) ++optimal;
    }
  }
  const double seconds = Seconds(start);
  return {optimal >= kPlannerShare * kPlannerSeeds &&
              seconds < kPlannerBudgetSeconds,
          fmt::format("{}/{} seeds optimal against 3-step expectimax "
                      "(need {:.0f}%), {:.2f} s",
                      optimal, kPlannerSeeds, 100 * kPlannerShare, seconds)};
}

std::shared_ptr<foref::ForefModels> TrainSluModels() {
  const std::vector<foref::CityDataset> cities = ForefCities();
  auto models = std::make_shared<foref::ForefModels>();
  for (foref::ForefKind kind :
       {foref::ForefKind::kFront, foref::ForefKind::kLeft}) {
    std::vector<foref::ForefSample> train, val;
    int k = 0;
    for (const foref::CityDataset &city : cities) {
      const foref::MapLookup lookup =
          [&city](const std::string &name) -> const GridMap & {
        return city.MapNamed(name);
      };
      for (const foref::AnnotationRecord &r : city.records) {
        if (r.kind != kind) continue;
        const bool is_val = k++ % 5 == 0;
        auto samples = foref::BuildSamples(
            {r}, lookup, foref::ContextVariant::kEgoCtx,
            !is_val && kind == foref::ForefKind::kFront, city.name);
        auto &dst = is_val ? val : train;
        dst.insert(dst.end(), samples.begin(), samples.end());
      }
    }
    foref::TrainConfig config = ForefTrainConfig();
    config.augment = kind == foref::ForefKind::kFront;
    foref::ForefModel model = foref::Train(train, val, kind, config).model;
    (kind == foref::ForefKind::kFront ? models->front : models->left) =
        std::move(model);
  }
  return models;
}

double CurveMargin(const ConditionSummary &a, const ConditionSummary &b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.completion.size(); ++i) {
    sum += a.completion[i] - b.completion[i];
  }
  return sum / (a.completion.size() * std::max(1, a.reward.n));
}

double Dominance(const ConditionSummary &a, const ConditionSummary &b) {
  int count = 0;
  for (size_t i = 0; i < a.completion.size(); ++i) {
    count += a.completion[i] >= b.completion[i] ? 1 : 0;
  }
  return static_cast<double>(count) / a.completion.size();
}

Outcome EndToEndOrdering(const Options &options) {
  const auto start = std::chrono::steady_clock::now();
  const auto models = TrainSluModels();
  std::ifstream in(options.data / "suites" / "ordering.json");
  SuiteConfig config = ParseSuiteConfig(nlohmann::json::parse(in));
  config.threads = options.threads;
  const SuiteReport report = RunSuite(config, foref::ModelForProvider(models));
  WriteSuiteOutputs(report, options.out / "suite");

  auto mean = [&](PriorMode m, int d) {
    return report.Condition(m, d).reward.mean;
  };
  const bool ordered =
      mean(PriorMode::kInformed, 3) > mean(PriorMode::kSlu, 3) &&
      mean(PriorMode::kSlu, 3) > mean(PriorMode::kKeyword, 3) &&
      mean(PriorMode::kKeyword, 3) > mean(PriorMode::kUniform, 3);
  const MeanCi gap =
      PairedDifference(report, PriorMode::kSlu, PriorMode::kKeyword, 3);
  const ConditionSummary &slu3 = report.Condition(PriorMode::kSlu, 3);
  const ConditionSummary &kw3 = report.Condition(PriorMode::kKeyword, 3);
  const ConditionSummary &slu5 = report.Condition(PriorMode::kSlu, 5);
  const ConditionSummary &kw5 = report.Condition(PriorMode::kKeyword, 5);
  const double dominance = Dominance(slu3, kw3);
  const double margin3 = CurveMargin(slu3, kw3);
  const double margin5 = CurveMargin(slu5, kw5);
  const double seconds = Seconds(start);
  const bool pass = ordered && gap.lo > 0.0 && dominance >= kDominanceShare &&
                    margin5 < margin3 && report.failures == 0 &&
                    seconds < kSuiteBudgetSeconds;
  return {pass,
          fmt::format("depth 3 means informed {:.1f} slu {:.1f} keyword {:.1f} "
                      "uniform {:.1f}; slu-keyword {:.1f} [{:.1f}, {:.1f}]; "
                      "dominance {:.1f}% (need {:.0f}%); curve margin "
                      "{:.3f} at depth 3, {:.3f} at depth 5; {} trials, "
                      "{} failed, {:.0f} s",
                      mean(PriorMode::kInformed, 3), mean(PriorMode::kSlu, 3),
                      mean(PriorMode::kKeyword, 3),
                      mean(PriorMode::kUniform, 3), gap.mean, gap.lo, gap.hi,
                      100 * dominance, 100 * kDominanceShare, margin3, margin5,
                      report.trials.size(), report.failures, seconds)};
}

std::vector<SpatialTuple> Sorted(std::vector<SpatialTuple> tuples) {
  std::sort(tuples.begin(), tuples.end());
  return tuples;
}

Outcome Parser(const Options &options) {
  const GridMap example = LoadMap(options.data / "maps" / "example_city.json");
  const Vocabulary targets =
      LoadTargetVocabulary(options.data / "targets.json");
  int total = 0, exact = 0;
  auto check = [&](const std::string &text, const GridMap &map,
                   const Vocabulary &vocab,
                   const std::vector<SpatialTuple> &gold) {
    ++total;
    const bool ok =
        Sorted(ExtractTuples(text, map, vocab).tuples) == Sorted(gold);
    exact += ok;
    if (!ok && std::getenv("ACCEPTANCE_VERBOSE")) std::cerr << text << "\n";
  };
  const std::vector<SpatialTuple> paper = {{"RedCar", "behind", "Belmont"},
                                           {"RedCar", "near", "HiLo"}};
  check("the red Honda is behind Belmont, near Hi-Lo", example, targets, paper);
  const bool paper_ok = exact == 1;

  // Every relation phrase with every synonym of every landmark; "between"
  // takes two grounds.
  for (const Landmark &a : example.landmarks()) {
    for (const Landmark &b : example.landmarks()) {
      if (a.id == b.id) continue;
      check("the red car is between " + a.synonyms[0] + " and " + b.synonyms[0],
            example, targets,
            {{"RedCar", "near", a.id}, {"RedCar", "near", b.id}});
    }
  }
  for (const RelationInfo &r : RelationLexicon::Default().relations()) {
    if (r.name == "between") continue;
    for (const Landmark &lm : example.landmarks()) {
      for (const std::string &syn : lm.synonyms) {
        check("the red car is " + RelationPhrase(r.name) + " " + syn, example,
              targets, {{"RedCar", r.name, lm.id}});
      }
    }
  }
  // Generated two-clause descriptions on synthetic cities.
  Vocabulary red;
  red["RedCar"] = {"red car"};
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const GridMap map = GenerateCity(seed % 25 + 300);
    const GeneratedLanguage lang =
        GenerateLanguage(map, "RedCar", "red car", seed);
    check(lang.text, map, red, lang.tuples);
  }

  // Free-form corpus: micro precision and recall, reported only.
  int tp = 0, predicted = 0, gold_count = 0, lines = 0;
  std::ifstream corpus(options.data / "corpus" / "freeform.jsonl");
  std::string line;
  while (std::getline(corpus, line)) {
    if (line.empty()) continue;
    const auto doc = nlohmann::json::parse(line);
    std::vector<SpatialTuple> gold;
    for (const auto &t : doc.at("gold_tuples")) {
      gold.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                      t[2].get<std::string>()});
    }
    const auto found =
        ExtractTuples(doc.at("text").get<std::string>(), example, targets)
            .tuples;
    for (const SpatialTuple &t : found) {
      tp += std::find(gold.begin(), gold.end(), t) != gold.end();
    }
    predicted += found.size();
    gold_count += gold.size();
    ++lines;
  }
  const double precision = predicted ? double(tp) / predicted : 0.0;
  const double recall = gold_count ? double(tp) / gold_count : 0.0;
  WriteText(options.out / "parser.json",
            nlohmann::json{{"canonical_sentences", total},
                           {"canonical_exact", exact},
                           {"freeform_sentences", lines},
                           {"freeform_precision", precision},
                           {"freeform_recall", recall}}
                    .dump(1) +
                "\n");
  return {paper_ok && exact == total && lines > 0,
          fmt::format("canonical {}/{} exact (example sentence {}); free-form "
                      "corpus of {} sentences: precision {:.3f}, recall {:.3f} "
                      "(reported only)",
                      exact, total, paper_ok ? "ok" : "wrong", lines, precision,
                      recall)};
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Reproducibility(const Options &options) {
  const fs::path suite = options.data / "suites" / "smoke.json";
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = options.out / ("repro_" + std::to_string(run));
    fs::remove_all(dir);
    const std::string command =
        fmt::format("\"{}\" bench \"{}\" --out \"{}\" > /dev/null",
                    options.cli.string(), suite.string(), dir.string());
    if (std::system(command.c_str()) != 0) {
      return {false, "bench invocation failed: " + command};
    }
    outputs.push_back(ReadFile(dir / "results.csv"));
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, fmt::format("two bench invocations, results.csv {} bytes, {}",
                            outputs[0].size(),
                            same ? "byte-identical" : "different")};
}

}  // namespace
}  // namespace slsearch

int main(int argc, char **argv) {
  using namespace slsearch;
  CLI::App app("Acceptance checks");
  Options options;
  std::string out = options.out.string();
  std::string data = SLSEARCH_DATA_DIR;
  std::string cli = SLSEARCH_CLI_PATH;
  std::vector<int> only;
  app.add_option("--out", out, "Artifact directory");
  app.add_option("--data", data, "Data directory");
  app.add_option("--cli", cli, "Path to the slsearch executable");
  app.add_option("--only", only, "Criteria to run")->delimiter(',');
  app.add_option("--threads", options.threads, "Suite worker threads");
  CLI11_PARSE(app, argc, argv);
  options.out = out;
  options.data = data;
  options.cli = cli;
  options.only.insert(only.begin(), only.end());
  std::filesystem::create_directories(options.out);

  const std::vector<
      std::pair<std::string, std::function<Outcome(const Options &)>>>
      criteria = {{"observation model", ObservationModel},
                  {"loss identities", LossIdentities},
                  {"exact filtering", ExactFiltering},
                  {"gradient check", GradientCheck},
                  {"frame of reference learning", ForefLearning},
                  {"planner sanity", PlannerSanity},
                  {"end-to-end ordering", EndToEndOrdering},
                  {"parser", Parser},
                  {"reproducibility", Reproducibility}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!options.only.empty() && !options.only.count(id)) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].second(options);
    } catch (const std::exception &e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::cout << fmt::format("{} [{}] {}: {}\n", outcome.pass ? "PASS" : "FAIL",
                             id, criteria[i].first, outcome.detail)
              << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
