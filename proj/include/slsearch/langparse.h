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

// Extraction of (figure, relation, ground) tuples from English sentences.
//
// Mentions of targets and landmarks are found by token-multiset cosine
// similarity against their synonyms. Relations come from a fixed preposition
// lexicon and are paired with the nearest following landmark in the same
// clause.

#ifndef SLSEARCH_LANGPARSE_H_
#define SLSEARCH_LANGPARSE_H_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slsearch/gridmap.h"

namespace slsearch {

class LexiconError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Which frame of reference gives a relation its direction.
enum class ForKind { kNone, kRelativeFront, kRelativeLeft, kAbsolute };

std::string_view ForKindName(ForKind kind);

struct RelationInfo {
  std::string name;
  bool requires_for = false;
  ForKind for_kind = ForKind::kNone;
  // Empty when the relation has no antonym.
  std::string antonym;
  double sigma_multiplier = 1.0;
  // Added to the frame angle to obtain the relation direction. For absolute
  // relations the frame angle is zero and this is the compass angle.
  double angle_offset = 0.0;
};

class RelationLexicon {
 public:
  // The built-in English preposition table.
  static const RelationLexicon &Default();

  explicit RelationLexicon(std::vector<RelationInfo> relations);

  // nullptr for unknown relations.
  const RelationInfo *Find(std::string_view relation) const;
  // Throws LexiconError naming the token.
  const RelationInfo &Get(std::string_view relation) const;

  const std::vector<RelationInfo> &relations() const { return relations_; }

 private:
  std::vector<RelationInfo> relations_;
  std::map<std::string, size_t, std::less<>> index_;
};

struct ForRequirement {
  bool required = false;
  ForKind kind = ForKind::kNone;
};

// Throws LexiconError for relations outside the lexicon.
ForRequirement RequiresFor(
    std::string_view relation,
    const RelationLexicon &lexicon = RelationLexicon::Default());

struct SpatialTuple {
  std::string figure;
  std::string relation;
  std::string ground;

  auto operator<=>(const SpatialTuple &) const = default;
};

struct SpatialLanguageObservation {
  // Distinct tuples in order of extraction.
  std::vector<SpatialTuple> tuples;
  std::string source_text;

  // Tuples whose figure is the given target.
  std::vector<SpatialTuple> ForFigure(std::string_view figure) const;
};

// id -> synonyms (lowercase phrases).
using Vocabulary = std::map<std::string, std::vector<std::string>>;

Vocabulary LoadTargetVocabulary(const std::filesystem::path &path);
Vocabulary ParseTargetVocabulary(const nlohmann::json &doc);

// "RedCar" -> "red car".
std::string SynonymFromId(std::string_view id);

// Lowercase word tokens; punctuation , ; . ! ? become their own tokens and
// every other non-alphanumeric character separates words.
std::vector<std::string> Tokenize(std::string_view text);

// Cosine similarity of token count vectors.
double TokenCosine(const std::vector<std::string> &a,
                   const std::vector<std::string> &b);

struct SymbolMatch {
  std::string id;
  double score = 0.0;
};

inline constexpr double kMatchThreshold = 0.5;

// Best vocabulary entry by token cosine; nullopt below kMatchThreshold. Ties
// go to the lexicographically smallest id.
std::optional<SymbolMatch> MatchSymbol(std::string_view phrase,
                                       const Vocabulary &vocabulary);

SpatialLanguageObservation ExtractTuples(
    std::string_view sentence, const GridMap &map, const Vocabulary &targets,
    const RelationLexicon &lexicon = RelationLexicon::Default());

// Surface phrase used when generating text, e.g. "front" -> "in front of".
std::string RelationPhrase(std::string_view relation);

}  // namespace slsearch

#endif  // SLSEARCH_LANGPARSE_H_
