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

#include "slsearch/langparse.h"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"

namespace slsearch {
namespace {

using testing::Building;
using testing::Rect;

const Vocabulary kTargets = {{"RedCar", {"red honda", "red car"}},
                             {"BlueBike", {"blue bike"}}};

GridMap PaperMap() {
  Landmark belmont = Building("Belmont", Rect(2, 2, 4, 4));
  Landmark hilo = Building("HiLo", Rect(8, 8, 9, 9));
  hilo.synonyms = {"hi lo", "hilo"};
  Landmark osprey = Building("Osprey", Rect(12, 2, 13, 3));
  osprey.synonyms = {"osprey", "osprey tower"};
  return GridMap("paper", 16, 16, 5.0, {belmont, hilo, osprey});
}

std::vector<SpatialTuple> Parse(const std::string &text) {
  return ExtractTuples(text, PaperMap(), kTargets).tuples;
}

TEST(MatchSymbolTest, CosineExamples) {
  auto m = MatchSymbol("the Belmont", {{"Belmont", {"belmont"}}});
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, "Belmont");
  EXPECT_NEAR(m->score, 1.0 / std::sqrt(2.0), 1e-12);

  m = MatchSymbol("red Honda", {{"RedCar", {"red honda", "red car"}}});
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, "RedCar");
  EXPECT_DOUBLE_EQ(m->score, 1.0);

  EXPECT_FALSE(MatchSymbol("blue truck", {{"RedCar", {"red honda"}}}));
}

TEST(MatchSymbolTest, TieGoesToSmallestId) {
  const Vocabulary vocab = {{"Zed", {"grand hall"}}, {"Alpha", {"grand hall"}}};
  auto m = MatchSymbol("grand hall", vocab);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, "Alpha");
}

TEST(TokenizeTest, SplitsPunctuationAndLowercases) {
  EXPECT_EQ(
      Tokenize("The red Honda is behind Belmont, near Hi-Lo."),
      (std::vector<std::string>{"the", "red", "honda", "is", "behind",
                                "belmont", ",", "near", "hi", "lo", "."}));
}

TEST(ExtractTuplesTest, PaperExample) {
  EXPECT_EQ(Parse("the red Honda is behind Belmont, near Hi-Lo"),
            (std::vector<SpatialTuple>{{"RedCar", "behind", "Belmont"},
                                       {"RedCar", "near", "HiLo"}}));
}

TEST(ExtractTuplesTest, SingleClause) {
  EXPECT_EQ(Parse("the red Honda is at Belmont"),
            (std::vector<SpatialTuple>{{"RedCar", "at", "Belmont"}}));
}

TEST(ExtractTuplesTest, NoMentionsGivesEmptyObservation) {
  const auto obs = ExtractTuples("hello world", PaperMap(), kTargets);
  EXPECT_TRUE(obs.tuples.empty());
  EXPECT_EQ(obs.source_text, "hello world");
}

TEST(ExtractTuplesTest, FallbackRelationIsAt) {
  EXPECT_EQ(Parse("red car, Belmont"),
            (std::vector<SpatialTuple>{{"RedCar", "at", "Belmont"}}));
}

TEST(ExtractTuplesTest, MultiWordRelationsAndCompass) {
  EXPECT_EQ(Parse("the red car is in front of Belmont"),
            (std::vector<SpatialTuple>{{"RedCar", "front", "Belmont"}}));
  EXPECT_EQ(Parse("the red car is to the left of the osprey tower"),
            (std::vector<SpatialTuple>{{"RedCar", "left", "Osprey"}}));
  EXPECT_EQ(Parse("the red car is north east of hilo"),
            (std::vector<SpatialTuple>{{"RedCar", "northeast", "HiLo"}}));
  EXPECT_EQ(Parse("the red car is next to hilo"),
            (std::vector<SpatialTuple>{{"RedCar", "next", "HiLo"}}));
}

TEST(ExtractTuplesTest, BetweenBecomesTwoNearTuples) {
  EXPECT_EQ(Parse("the blue bike is between Belmont and Osprey"),
            (std::vector<SpatialTuple>{{"BlueBike", "near", "Belmont"},
                                       {"BlueBike", "near", "Osprey"}}));
}

TEST(ExtractTuplesTest, TwoFiguresInOneSentence) {
  EXPECT_EQ(Parse("the red car is behind belmont and the blue bike is near "
                  "osprey"),
            (std::vector<SpatialTuple>{{"RedCar", "behind", "Belmont"},
                                       {"BlueBike", "near", "Osprey"}}));
}

TEST(ExtractTuplesTest, DuplicateTuplesEmittedOnce) {
  EXPECT_EQ(Parse("the red car is near belmont, near belmont"),
            (std::vector<SpatialTuple>{{"RedCar", "near", "Belmont"}}));
}

TEST(ExtractTuplesTest, Deterministic) {
  const std::string text = "the red Honda is behind Belmont, near Hi-Lo";
  EXPECT_EQ(Parse(text), Parse(text));
}

TEST(ExtractTuplesTest, CanonicalRenderingIsIdempotent) {
  const GridMap map = PaperMap();
  const std::vector<std::string> relations = {
      "near", "at",    "on",    "in",        "front", "behind",
      "left", "right", "north", "southwest", "east",  "beside",
      "next", "along", "above", "below"};
  for (const std::string &r : relations) {
    for (const Landmark &lm : map.landmarks()) {
      const std::string text =
          "the red honda is " + RelationPhrase(r) + " " + lm.synonyms.front();
      const auto once = ExtractTuples(text, map, kTargets).tuples;
      ASSERT_EQ(once, (std::vector<SpatialTuple>{{"RedCar", r, lm.id}}))
          << text;
      const std::string again = "the red honda is " +
                                RelationPhrase(once[0].relation) + " " +
                                map.Get(once[0].ground).synonyms.front();
      EXPECT_EQ(ExtractTuples(again, map, kTargets).tuples, once);
    }
  }
}

TEST(ExtractTuplesTest, NeverHallucinatesSymbols) {
  const GridMap map = PaperMap();
  const std::vector<std::string> words = {
      "the",    "red", "car",     "honda",   "blue", "bike", "is",     "near",
      "behind", "of",  "front",   "belmont", "hi",   "lo",   "osprey", "tower",
      ",",      "and", "between", "north",   "left", "to",   "at",     "xyz"};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    for (int k = 0; k < 10; ++k) text += words[pick(rng)] + " ";
    for (const SpatialTuple &t : ExtractTuples(text, map, kTargets).tuples) {
      EXPECT_TRUE(kTargets.contains(t.figure)) << text;
      EXPECT_NE(map.Find(t.ground), nullptr) << text;
      EXPECT_NE(RelationLexicon::Default().Find(t.relation), nullptr) << text;
    }
  }
}

TEST(RequiresForTest, Examples) {
  auto r = RequiresFor("behind");
  EXPECT_TRUE(r.required);
  EXPECT_EQ(r.kind, ForKind::kRelativeFront);
  r = RequiresFor("near");
  EXPECT_FALSE(r.required);
  EXPECT_EQ(r.kind, ForKind::kNone);
  r = RequiresFor("north");
  EXPECT_TRUE(r.required);
  EXPECT_EQ(r.kind, ForKind::kAbsolute);
  try {
    RequiresFor("upstairs");
    FAIL();
  } catch (const LexiconError &e) {
    EXPECT_NE(std::string(e.what()).find("upstairs"), std::string::npos);
  }
}

TEST(RelationLexiconTest, ForRequiringSetMatchesList) {
  const std::set<std::string> expected = {
      "above",     "below", "down",   "top",       "under",     "north",
      "east",      "south", "west",   "northwest", "northeast", "southwest",
      "southeast", "front", "behind", "left",      "right"};
  std::set<std::string> actual;
  for (const RelationInfo &info : RelationLexicon::Default().relations()) {
    if (info.requires_for) actual.insert(info.name);
  }
  EXPECT_EQ(actual, expected);
}

TEST(VocabularyTest, ParsesTargetFile) {
  const auto vocab = ParseTargetVocabulary(nlohmann::json::parse(
      R"({"targets": [{"id": "RedCar", "synonyms": ["Red Honda"]}]})"));
  EXPECT_EQ(vocab.at("RedCar"), std::vector<std::string>{"red honda"});
  EXPECT_EQ(SynonymFromId("RedCar"), "red car");
}

}  // namespace
}  // namespace slsearch
