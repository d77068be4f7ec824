// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtconf/corpus.hpp"

namespace mtconf {

enum class LmSmoothing { witten_bell, add_k };

struct LmTrainOptions {
  int order = 3;
  LmSmoothing smoothing = LmSmoothing::witten_bell;
  double add_k = 0.0;       // only used with LmSmoothing::add_k; 0 = plain MLE
  long min_word_count = 1;  // tokens seen fewer times than this become <unk>
};

/// Backoff n-gram model over words (or feature tags). Probabilities and
/// backoff weights are stored as log10, ARPA style. Models are immutable
/// after train/load; queries are concurrency-safe.
class NgramModel {
 public:
  static constexpr const char* kUnknown = "<unk>";
  static constexpr const char* kSentenceBegin = "<s>";
  static constexpr const char* kSentenceEnd = "</s>";

  int order() const { return order_; }

  /// P(word | history) by standard backoff: longest stored n-gram wins,
  /// shorter histories are reached through the context's backoff weight.
  /// Histories shorter than order-1 are padded on the left with <s>; longer
  /// ones are trimmed to their last order-1 words. Unknown words map to
  /// <unk>. Total: returns 0 only when an unsmoothed model stores nothing
  /// for the word at all.
  double word_prob(const std::string& word, std::span<const std::string> history) const;
  double log10_word_prob(const std::string& word, std::span<const std::string> history) const;

  /// Per-word probabilities for a whole sentence, histories padded with <s>.
  std::vector<double> sentence_probs(const Sentence& sentence) const;

  /// Words the model can predict: everything stored except <s>.
  std::vector<std::string> predicted_words() const;

  /// All stored n-grams of the given length (1-based), as word sequences.
  std::vector<std::vector<std::string>> stored_grams(int length) const;

  size_t gram_count(int length) const { return levels_[static_cast<size_t>(length) - 1].size(); }

  friend NgramModel train_ngram(const Corpus&, const LmTrainOptions&);
  friend NgramModel load_arpa(const std::string&);
  friend void save_arpa(const NgramModel&, const std::string&);

 private:
  using Gram = std::vector<int>;
  struct GramHash {
    size_t operator()(const Gram& g) const {
      size_t h = 1469598103934665603ull;
      for (int id : g) {
        h ^= static_cast<size_t>(static_cast<std::uint32_t>(id));
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  struct Node {
    double log10_prob = 0.0;
    double log10_bow = 0.0;
  };

  int id_or_unk(const std::string& word) const;
  const Node* find(const Gram& gram) const;
  double backoff_prob(const Gram& context, int word) const;

  int order_ = 0;
  Vocabulary vocab_;
  int unk_id_ = -1, bos_id_ = -1, eos_id_ = -1;
  std::vector<std::unordered_map<Gram, Node, GramHash>> levels_;  // levels_[m-1]: m-grams
};

/// Trains a backoff model. Sentences are padded with order-1 begin symbols
/// and one end symbol. Witten-Bell interpolates toward the shorter context;
/// add-k adds k to every count over the prediction vocabulary. Either way the
/// stored model is exactly normalized per context (see tests).
NgramModel train_ngram(const Corpus& corpus, const LmTrainOptions& options);

/// Reads the standard ARPA backoff format (log10 probabilities, optional
/// log10 backoff weight per entry). Missing backoff weights default to 0.
NgramModel load_arpa(const std::string& path);

void save_arpa(const NgramModel& model, const std::string& path);

}  // namespace mtconf
