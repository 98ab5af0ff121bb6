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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "slsearch/angles.h"

namespace slsearch {

std::string_view ForKindName(ForKind kind) {
  switch (kind) {
    case ForKind::kRelativeFront:
      return "relative_front";
    case ForKind::kRelativeLeft:
      return "relative_left";
    case ForKind::kAbsolute:
      return "absolute";
    case ForKind::kNone:
      break;
  }
  return "none";
}

namespace {

RelationInfo Relative(std::string name, ForKind kind, std::string antonym,
                      double offset) {
  return {std::move(name), true, kind, std::move(antonym), 2.0, offset};
}

RelationInfo Absolute(std::string name, std::string antonym, double angle) {
  return {std::move(name),    true, ForKind::kAbsolute,
          std::move(antonym), 2.0,  angle};
}

RelationInfo Proximal(std::string name, double sigma_multiplier) {
  return {std::move(name), false, ForKind::kNone, "", sigma_multiplier, 0.0};
}

std::vector<RelationInfo> DefaultRelations() {
  constexpr double q = kPi / 4.0;
  return {
      Relative("front", ForKind::kRelativeFront, "behind", 0.0),
      Relative("behind", ForKind::kRelativeFront, "front", kPi),
      Relative("left", ForKind::kRelativeLeft, "right", 0.0),
      Relative("right", ForKind::kRelativeLeft, "left", kPi),
      Absolute("east", "west", 0.0),
      Absolute("northeast", "southwest", q),
      Absolute("north", "south", 2 * q),
      Absolute("northwest", "southeast", 3 * q),
      Absolute("west", "east", 4 * q),
      Absolute("southwest", "northeast", 5 * q),
      Absolute("south", "north", 6 * q),
      Absolute("southeast", "northwest", 7 * q),
      // On a top-down map "above" reads as north and "below" as south.
      Absolute("above", "below", 2 * q),
      Absolute("top", "below", 2 * q),
      Absolute("below", "above", 6 * q),
      Absolute("down", "above", 6 * q),
      Absolute("under", "above", 6 * q),
      Proximal("at", 0.5),
      Proximal("on", 0.5),
      Proximal("in", 0.5),
      Proximal("near", 1.0),
      Proximal("beside", 1.0),
      Proximal("next", 1.0),
      Proximal("along", 1.0),
      Proximal("between", 1.0),
      Proximal("by", 1.0),
      Proximal("around", 1.0),
      Proximal("across", 1.0),
  };
}

// Surface words that normalize to a lexicon relation.
const std::unordered_map<std::string, std::string> &RelationAliases() {
  static const auto *aliases = new std::unordered_map<std::string, std::string>{
      {"nearby", "near"},      {"close", "near"},      {"inside", "in"},
      {"within", "in"},        {"atop", "on"},         {"beneath", "under"},
      {"underneath", "under"}, {"alongside", "along"}, {"besides", "beside"},
      {"opposite", "across"},
  };
  return *aliases;
}

const std::unordered_set<std::string> &Stopwords() {
  static const auto *words = new std::unordered_set<std::string>{
      "the",       "a",      "an",      "is",    "are",      "was",  "were",
      "be",        "of",     "to",      "it",    "its",      "it's", "s",
      "located",   "parked", "sitting", "found", "can",      "you",  "will",
      "find",      "there",  "that",    "this",  "which",    "just", "also",
      "somewhere", "should", "i",       "think", "directly", "very", "little",
      "bit",       "both",
  };
  return *words;
}

const std::unordered_set<std::string> &Separators() {
  static const auto *words = new std::unordered_set<std::string>{
      ",", ";", ".", "!", "?", "and", "but", "while", "or"};
  return *words;
}

bool IsPunctuation(char c) {
  return c == ',' || c == ';' || c == '.' || c == '!' || c == '?';
}

}  // namespace

const RelationLexicon &RelationLexicon::Default() {
  static const auto *lexicon = new RelationLexicon(DefaultRelations());
  return *lexicon;
}

RelationLexicon::RelationLexicon(std::vector<RelationInfo> relations)
    : relations_(std::move(relations)) {
  for (size_t i = 0; i < relations_.size(); ++i) {
    if (!(relations_[i].sigma_multiplier > 0.0)) {
      throw LexiconError("relation '" + relations_[i].name +
                         "' needs a positive sigma multiplier");
    }
    if (!index_.emplace(relations_[i].name, i).second) {
      throw LexiconError("relation '" + relations_[i].name + "' listed twice");
    }
  }
}

const RelationInfo *RelationLexicon::Find(std::string_view relation) const {
  auto it = index_.find(relation);
  return it == index_.end() ? nullptr : &relations_[it->second];
}

const RelationInfo &RelationLexicon::Get(std::string_view relation) const {
  const RelationInfo *info = Find(relation);
  if (info == nullptr) {
    throw LexiconError("unknown relation '" + std::string(relation) + "'");
  }
  return *info;
}

ForRequirement RequiresFor(std::string_view relation,
                           const RelationLexicon &lexicon) {
  const RelationInfo &info = lexicon.Get(relation);
  return {info.requires_for, info.for_kind};
}

std::vector<SpatialTuple> SpatialLanguageObservation::ForFigure(
    std::string_view figure) const {
  std::vector<SpatialTuple> out;
  for (const SpatialTuple &t : tuples) {
    if (t.figure == figure) out.push_back(t);
  }
  return out;
}

std::string SynonymFromId(std::string_view id) {
  std::string out;
  for (size_t i = 0; i < id.size(); ++i) {
    const unsigned char c = id[i];
    if (std::isupper(c) && i > 0 && !out.empty() && out.back() != ' ') {
      out.push_back(' ');
    }
    if (c == '_' || c == '-') {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

Vocabulary ParseTargetVocabulary(const nlohmann::json &doc) {
  Vocabulary vocab;
  try {
    for (const auto &entry : doc.at("targets")) {
      const std::string id = entry.at("id").get<std::string>();
      std::vector<std::string> synonyms;
      if (entry.contains("synonyms")) {
        synonyms = entry.at("synonyms").get<std::vector<std::string>>();
      }
      for (auto &s : synonyms) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return std::tolower(c); });
      }
      if (synonyms.empty()) synonyms.push_back(SynonymFromId(id));
      if (!vocab.emplace(id, std::move(synonyms)).second) {
        throw LexiconError("duplicate target id '" + id + "'");
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw LexiconError(std::string("malformed target vocabulary: ") + e.what());
  }
  return vocab;
}

Vocabulary LoadTargetVocabulary(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open vocabulary " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw LexiconError("cannot parse vocabulary " + path.string() + ": " +
                       e.what());
  }
  return ParseTargetVocabulary(doc);
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  for (char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '\'') {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
      if (IsPunctuation(ch)) tokens.emplace_back(1, ch);
    }
  }
  flush();
  // Possessives and stray apostrophes.
  for (auto &t : tokens) {
    if (t.size() > 2 && t.ends_with("'s")) t.resize(t.size() - 2);
    std::erase(t, '\'');
  }
  std::erase_if(tokens, [](const std::string &t) { return t.empty(); });
  return tokens;
}

double TokenCosine(const std::vector<std::string> &a,
                   const std::vector<std::string> &b) {
  if (a.empty() || b.empty()) return 0.0;
  std::map<std::string_view, std::pair<int, int>> counts;
  for (const auto &t : a) ++counts[t].first;
  for (const auto &t : b) ++counts[t].second;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto &[token, c] : counts) {
    dot += static_cast<double>(c.first) * c.second;
    na += static_cast<double>(c.first) * c.first;
    nb += static_cast<double>(c.second) * c.second;
  }
  return dot / std::sqrt(na * nb);
}

namespace {

std::optional<SymbolMatch> MatchTokens(const std::vector<std::string> &tokens,
                                       const Vocabulary &vocabulary) {
  std::optional<SymbolMatch> best;
  // Vocabulary iterates in id order, so strict improvement keeps the
  // lexicographically smallest id on ties.
  for (const auto &[id, synonyms] : vocabulary) {
    for (const auto &syn : synonyms) {
      const double score = TokenCosine(tokens, Tokenize(syn));
      if (!best || score > best->score) best = SymbolMatch{id, score};
    }
  }
  if (!best || best->score < kMatchThreshold) return std::nullopt;
  return best;
}

// Merges "north east" / "north-east" into "northeast".
void MergeIntercardinals(std::vector<std::string> &tokens) {
  std::vector<std::string> merged;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if ((tokens[i] == "north" || tokens[i] == "south") &&
        i + 1 < tokens.size() &&
        (tokens[i + 1] == "east" || tokens[i + 1] == "west")) {
      merged.push_back(tokens[i] + tokens[i + 1]);
      ++i;
    } else {
      merged.push_back(tokens[i]);
    }
  }
  tokens = std::move(merged);
}

enum class ItemKind { kTarget, kLandmark, kRelation, kSeparator };

struct Item {
  ItemKind kind;
  std::string value;
};

std::optional<std::string> NormalizeRelation(const std::string &token,
                                             const RelationLexicon &lexicon) {
  if (lexicon.Find(token) != nullptr) return token;
  auto it = RelationAliases().find(token);
  if (it != RelationAliases().end() && lexicon.Find(it->second) != nullptr) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<Item> Segment(const std::vector<std::string> &tokens,
                          const GridMap &map, const Vocabulary &targets,
                          const RelationLexicon &lexicon) {
  const Vocabulary landmarks = map.Vocabulary();
  auto is_content = [&](const std::string &t) {
    return !Separators().contains(t) && !Stopwords().contains(t) &&
           !NormalizeRelation(t, lexicon).has_value();
  };

  std::vector<Item> items;
  size_t i = 0;
  while (i < tokens.size()) {
    const std::string &tok = tokens[i];
    if (Separators().contains(tok)) {
      items.push_back({ItemKind::kSeparator, tok});
      ++i;
      continue;
    }
    if (auto rel = NormalizeRelation(tok, lexicon)) {
      items.push_back({ItemKind::kRelation, *rel});
      ++i;
      continue;
    }
    if (!is_content(tok)) {
      ++i;
      continue;
    }
    size_t run = 0;
    while (i + run < tokens.size() && run < 4 && is_content(tokens[i + run])) {
      ++run;
    }
    bool matched = false;
    for (size_t n = run; n >= 1 && !matched; --n) {
      std::vector<std::string> phrase(tokens.begin() + i,
                                      tokens.begin() + i + n);
      auto target = MatchTokens(phrase, targets);
      auto landmark = MatchTokens(phrase, landmarks);
      if (target && (!landmark || target->score >= landmark->score)) {
        items.push_back({ItemKind::kTarget, target->id});
      } else if (landmark) {
        items.push_back({ItemKind::kLandmark, landmark->id});
      } else {
        continue;
      }
      i += n;
      matched = true;
    }
    if (!matched) ++i;
  }
  return items;
}

}  // namespace

std::optional<SymbolMatch> MatchSymbol(std::string_view phrase,
                                       const Vocabulary &vocabulary) {
  return MatchTokens(Tokenize(phrase), vocabulary);
}

SpatialLanguageObservation ExtractTuples(std::string_view sentence,
                                         const GridMap &map,
                                         const Vocabulary &targets,
                                         const RelationLexicon &lexicon) {
  SpatialLanguageObservation obs;
  obs.source_text = std::string(sentence);

  std::vector<std::string> tokens = Tokenize(sentence);
  MergeIntercardinals(tokens);
  const std::vector<Item> items = Segment(tokens, map, targets, lexicon);

  std::set<SpatialTuple> seen;
  auto emit = [&](const std::string &figure, const std::string &relation,
                  const std::string &ground) {
    SpatialTuple t{figure, relation, ground};
    if (seen.insert(t).second) obs.tuples.push_back(std::move(t));
  };

  std::vector<std::string> figures;
  bool figures_grounded = false;
  // (relation, ground) pairs that appear before any figure.
  std::vector<std::pair<std::string, std::string>> orphans;
  std::vector<std::string> pending;
  int between_grounds = -1;  // -1 when no "between" construction is open

  for (const Item &item : items) {
    switch (item.kind) {
      case ItemKind::kTarget:
        if (figures_grounded) {
          figures.clear();
          figures_grounded = false;
        }
        if (std::find(figures.begin(), figures.end(), item.value) ==
            figures.end()) {
          figures.push_back(item.value);
        }
        if (!orphans.empty()) {
          for (const auto &[rel, ground] : orphans)
            emit(item.value, rel, ground);
          orphans.clear();
          figures_grounded = true;
        }
        pending.clear();
        break;
      case ItemKind::kRelation:
        if (item.value == "between") {
          between_grounds = 0;
        } else {
          pending.push_back(item.value);
        }
        break;
      case ItemKind::kLandmark: {
        std::string relation;
        if (between_grounds >= 0) {
          relation = "near";
          if (++between_grounds == 2) between_grounds = -1;
        } else if (!pending.empty()) {
          relation = pending.back();
        } else {
          relation = "at";
        }
        if (figures.empty()) {
          if (!pending.empty() || relation == "near") {
            orphans.emplace_back(relation, item.value);
          }
        } else {
          for (const auto &f : figures) emit(f, relation, item.value);
          figures_grounded = true;
        }
        pending.clear();
        break;
      }
      case ItemKind::kSeparator:
        if (between_grounds == 1 && item.value == "and") break;
        between_grounds = -1;
        pending.clear();
        break;
    }
  }
  return obs;
}

std::string RelationPhrase(std::string_view relation) {
  static const std::map<std::string, std::string, std::less<>> phrases = {
      {"front", "in front of"},     {"left", "to the left of"},
      {"right", "to the right of"}, {"next", "next to"},
      {"top", "on top of"},
  };
  if (auto it = phrases.find(relation); it != phrases.end()) return it->second;
  static const std::set<std::string, std::less<>> compass = {
      "north",     "south",     "east",      "west",
      "northeast", "northwest", "southeast", "southwest"};
  if (compass.contains(relation)) return std::string(relation) + " of";
  return std::string(relation);
}

}  // namespace slsearch
