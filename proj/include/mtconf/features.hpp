// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtconf/corpus.hpp"
#include "mtconf/lm.hpp"
#include "mtconf/score_vector.hpp"

namespace mtconf {

/// Atomic linguistic tag: syntactic class, verb tense, agreement (gender and
/// number, or person). Rendered canonically as `CLASS,TENSE,AGR` with empty
/// slots written as `-`, e.g. `V,ii,3S` or `N,-,mP`.
struct FeatureTag {
  std::string syntactic_class;
  std::string tense;      // empty = none
  std::string agreement;  // empty = none

  std::string canonical() const;
  static FeatureTag parse(std::string_view text);  // throws Error(format) on wrong arity
  static const FeatureTag& unknown();              // UNK,-,-

  bool operator==(const FeatureTag& other) const = default;
};

/// word -> ordered tag alternatives (file order; ambiguous words have > 1).
/// Out-of-lexicon words resolve to the single UNK tag.
class FeatureLexicon {
 public:
  /// Appends a tag for a word; exact duplicates collapse.
  void add(const std::string& word, FeatureTag tag);

  const std::vector<FeatureTag>& lookup(const std::string& word) const;
  bool contains(const std::string& word) const { return entries_.count(word) > 0; }
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<FeatureTag>> entries_;
};

/// TSV lines `word<TAB>CLASS,TENSE,AGR`; repeated word lines accumulate
/// ambiguous readings.
FeatureLexicon load_lexicon(const std::string& path);

/// Replaces every word by one of its tags: ambiguous words get a uniform
/// seeded draw, unambiguous ones map deterministically. Output sentences hold
/// canonical tag strings and stay aligned with the input.
Corpus tag_corpus_for_training(const Corpus& corpus, const FeatureLexicon& lexicon,
                               std::uint64_t seed);

/// Most probable tag sequence under the tag model, by exact dynamic
/// programming over (order-1)-tag states; ties prefer the earlier lexicon
/// alternative. OOV words contribute a single UNK alternative.
std::vector<std::string> disambiguate(const Sentence& sentence, const FeatureLexicon& lexicon,
                                      const NgramModel& tag_model);

/// Per-word tag-model probabilities along the disambiguated tag sequence.
ScoreVector feature_confidence(const Sentence& sentence, const FeatureLexicon& lexicon,
                               const NgramModel& tag_model);

}  // namespace mtconf
