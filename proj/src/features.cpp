// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/features.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

std::string FeatureTag::canonical() const {
  std::string out = syntactic_class.empty() ? "-" : syntactic_class;
  out.push_back(',');
  out += tense.empty() ? "-" : tense;
  out.push_back(',');
  out += agreement.empty() ? "-" : agreement;
  return out;
}

FeatureTag FeatureTag::parse(std::string_view text) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(text.substr(start));
      break;
    }
    fields.emplace_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  if (fields.size() != 3) {
    throw Error(ErrorCategory::format,
                "tag '" + std::string(text) + "' must have 3 comma-separated fields");
  }
  for (const std::string& f : fields) {
    if (f.empty() ||
        std::any_of(f.begin(), f.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      throw Error(ErrorCategory::format, "tag '" + std::string(text) + "' has an empty or blank field");
    }
  }
  FeatureTag tag;
  tag.syntactic_class = fields[0];
  if (fields[1] != "-") tag.tense = fields[1];
  if (fields[2] != "-") tag.agreement = fields[2];
  return tag;
}

const FeatureTag& FeatureTag::unknown() {
  static const FeatureTag tag{"UNK", "", ""};
  return tag;
}

void FeatureLexicon::add(const std::string& word, FeatureTag tag) {
  auto& tags = entries_[word];
  if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(std::move(tag));
}

const std::vector<FeatureTag>& FeatureLexicon::lookup(const std::string& word) const {
  static const std::vector<FeatureTag> oov{FeatureTag::unknown()};
  auto it = entries_.find(word);
  return it == entries_.end() ? oov : it->second;
}

FeatureLexicon load_lexicon(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  FeatureLexicon lexicon;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCategory::format,
                  "'" + path + "' line " + std::to_string(i + 1) + ": expected word<TAB>tag");
    }
    try {
      lexicon.add(line.substr(0, tab), FeatureTag::parse(std::string_view(line).substr(tab + 1)));
    } catch (const Error& e) {
      throw Error(ErrorCategory::format,
                  "'" + path + "' line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return lexicon;
}

Corpus tag_corpus_for_training(const Corpus& corpus, const FeatureLexicon& lexicon,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Corpus tagged;
  tagged.reserve(corpus.size());
  for (const Sentence& sentence : corpus) {
    Sentence tags;
    tags.reserve(sentence.size());
    for (const std::string& word : sentence) {
      const auto& alternatives = lexicon.lookup(word);
      // rng() % n is fully specified by the standard, unlike the
      // distribution adaptors, so tagged corpora reproduce bit-for-bit.
      size_t pick = alternatives.size() == 1
                        ? 0
                        : static_cast<size_t>(rng() % alternatives.size());
      tags.push_back(alternatives[pick].canonical());
    }
    tagged.push_back(std::move(tags));
  }
  return tagged;
}

namespace {

struct LatticeState {
  double log_prob = 0.0;
  std::vector<int> path;  // alternative index per word so far
};

bool better(double lp, const std::vector<int>& path, const LatticeState& incumbent) {
  if (lp != incumbent.log_prob) return lp > incumbent.log_prob;
  return path < incumbent.path;
}

}  // namespace

std::vector<std::string> disambiguate(const Sentence& sentence, const FeatureLexicon& lexicon,
                                      const NgramModel& tag_model) {
  if (sentence.empty()) return {};
  const size_t span = tag_model.order() >= 2 ? static_cast<size_t>(tag_model.order() - 1) : 0;

  std::vector<std::vector<std::string>> alternatives;
  alternatives.reserve(sentence.size());
  for (const std::string& word : sentence) {
    std::vector<std::string> tags;
    for (const FeatureTag& t : lexicon.lookup(word)) tags.push_back(t.canonical());
    alternatives.push_back(std::move(tags));
  }

  // Exact Viterbi over (order-1)-tag contexts. std::map keys give a
  // deterministic expansion order; equal-probability paths prefer the
  // lexicographically smaller alternative-index sequence, i.e. lexicon order.
  std::map<std::vector<std::string>, LatticeState> states;
  states[{}] = LatticeState{};
  for (size_t i = 0; i < sentence.size(); ++i) {
    std::map<std::vector<std::string>, LatticeState> next;
    for (const auto& [context, state] : states) {
      for (size_t a = 0; a < alternatives[i].size(); ++a) {
        const std::string& tag = alternatives[i][a];
        double lp = state.log_prob + tag_model.log10_word_prob(tag, context);
        std::vector<std::string> new_context = context;
        new_context.push_back(tag);
        if (new_context.size() > span) {
          new_context.erase(new_context.begin(),
                            new_context.end() - static_cast<long>(span));
        }
        std::vector<int> path = state.path;
        path.push_back(static_cast<int>(a));
        auto it = next.find(new_context);
        if (it == next.end()) {
          next.emplace(std::move(new_context), LatticeState{lp, std::move(path)});
        } else if (better(lp, path, it->second)) {
          it->second = LatticeState{lp, std::move(path)};
        }
      }
    }
    states = std::move(next);
  }

  const LatticeState* best = nullptr;
  for (const auto& [context, state] : states) {
    if (!best || better(state.log_prob, state.path, *best)) best = &state;
  }
  std::vector<std::string> tags;
  tags.reserve(sentence.size());
  for (size_t i = 0; i < sentence.size(); ++i) {
    tags.push_back(alternatives[i][static_cast<size_t>(best->path[i])]);
  }
  return tags;
}

ScoreVector feature_confidence(const Sentence& sentence, const FeatureLexicon& lexicon,
                               const NgramModel& tag_model) {
  std::vector<std::string> tags = disambiguate(sentence, lexicon, tag_model);
  ScoreVector scores = ScoreVector::sized(sentence.size());
  for (size_t i = 0; i < tags.size(); ++i) {
    scores.values[i] = tag_model.word_prob(tags[i], std::span(tags.data(), i));
  }
  return scores;
}

}  // namespace mtconf
