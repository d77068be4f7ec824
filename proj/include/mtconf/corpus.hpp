// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mtconf {

/// A pre-tokenized sentence. Formulas index words 1..I; storage is 0-based.
using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

/// Line-aligned (source, target) sentence pairs.
struct Bitext {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  size_t size() const { return pairs.size(); }
};

/// Dense word <-> id bijection with per-word sentence frequencies. Ids are
/// assigned in first-seen order, 0..V-1.
class Vocabulary {
 public:
  /// Returns the word's id, inserting it if absent.
  int add(const std::string& word);
  std::optional<int> find(const std::string& word) const;
  const std::string& word(int id) const { return words_[static_cast<size_t>(id)]; }
  int size() const { return static_cast<int>(words_.size()); }

  long frequency(int id) const { return freq_[static_cast<size_t>(id)]; }
  void add_frequency(int id, long delta) { freq_[static_cast<size_t>(id)] += delta; }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> words_;
  std::vector<long> freq_;
};

class ToolWordSet {
 public:
  ToolWordSet() = default;
  void insert(std::string word) { words_.insert(std::move(word)); }
  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Loads a one-sentence-per-line whitespace-tokenized corpus. No case folding
/// or re-tokenization is applied. Empty lines are skipped when skip_empty is
/// set and rejected otherwise.
Corpus load_monolingual(const std::string& path, bool skip_empty);

/// Writes one sentence per line, tokens separated by single spaces.
void save_monolingual(const Corpus& corpus, const std::string& path);

/// Loads two line-aligned files; line counts must match.
Bitext load_bitext(const std::string& src_path, const std::string& tgt_path);

/// Collects the words whose sentence frequency (presence, not token
/// multiplicity) is at least min_sentence_freq.
Vocabulary build_vocabulary(const Corpus& corpus, long min_sentence_freq);

ToolWordSet load_toolwords(const std::string& path);

}  // namespace mtconf
