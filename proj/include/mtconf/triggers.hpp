// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtconf/corpus.hpp"

namespace mtconf {

enum class TriggerMode { intra, inter };

const char* to_string(TriggerMode mode);

/// Additive-count / interpolation smoothing of the joint probability. The raw
/// joint count is inflated by add_count first, then the joint probability is
/// interpolated toward the independence product with weight alpha. Marginals
/// are never inflated.
struct SmoothingParams {
  long add_count = 0;  // C
  double alpha = 0.0;

  bool none() const { return add_count == 0 && alpha == 0.0; }
};

/// Sentence-level presence counts. In intra mode the joint table is symmetric
/// and both marginals are the same table; self pairs (x,x) are never counted.
class CooccurrenceCounts {
 public:
  TriggerMode mode() const { return mode_; }
  long total() const { return total_; }

  long left_count(const std::string& x) const;
  long right_count(const std::string& y) const;
  long joint_count(const std::string& x, const std::string& y) const;

  const Vocabulary& left_vocab() const { return left_; }
  const Vocabulary& right_vocab() const { return mode_ == TriggerMode::intra ? left_ : right_; }

  long left_count_id(int x) const { return left_.frequency(x); }
  long right_count_id(int y) const {
    return mode_ == TriggerMode::intra ? left_.frequency(y) : right_.frequency(y);
  }
  long joint_count_ids(int x, int y) const;

  /// MI(x,y) by id, with smoothing applied. Returns 0 when the smoothed joint
  /// probability is 0 (the 0*log 0 convention).
  double mi_from_ids(int x, int y, const SmoothingParams& smoothing) const;

  /// Component-wise addition; shards counted from disjoint corpus slices merge
  /// into the counts of the concatenation. Modes must match.
  void merge(const CooccurrenceCounts& other);

  const std::unordered_map<std::uint64_t, long>& joint() const { return joint_; }

  friend CooccurrenceCounts count_cooccurrences(const Corpus&, const ToolWordSet&, bool);
  friend CooccurrenceCounts count_cooccurrences(const Bitext&, const ToolWordSet&, bool);

 private:
  static std::uint64_t pack(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }

  TriggerMode mode_ = TriggerMode::intra;
  long total_ = 0;
  Vocabulary left_;   // intra mode: the only table (frequencies hold N(x))
  Vocabulary right_;  // inter mode only
  // intra: key packs (min id, max id); inter: (source id, target id).
  std::unordered_map<std::uint64_t, long> joint_;
};

/// Intra-language counting over a corpus. A word occurring twice in a sentence
/// counts once; tool words, when excluded, contribute to no count at all.
CooccurrenceCounts count_cooccurrences(const Corpus& corpus, const ToolWordSet& toolwords,
                                       bool exclude_toolwords);

/// Inter-language counting over a bitext: N_S(x), N_T(y) and the number of
/// pairs whose source contains x and target contains y.
CooccurrenceCounts count_cooccurrences(const Bitext& bitext, const ToolWordSet& toolwords,
                                       bool exclude_toolwords);

/// MI(x,y) = p(x,y) * log2(p(x,y) / (p(x) p(y))) with smoothing applied to the
/// joint only. Throws Error(domain) for words outside the counted vocabulary
/// or when no sentences were counted.
double mutual_information(const CooccurrenceCounts& counts, const std::string& x,
                          const std::string& y, const SmoothingParams& smoothing);

struct TriggerEntry {
  std::string word;
  double mi;
};

/// Pruned trigger matrix: per trigger word, the top-k triggered words by
/// descending MI (ties broken by the triggered word's byte order).
class TriggerList {
 public:
  TriggerList(TriggerMode mode, bool normalized) : mode_(mode), normalized_(normalized) {}

  TriggerMode mode() const { return mode_; }
  bool normalized() const { return normalized_; }
  void set_normalized(bool v) { normalized_ = v; }

  /// Appends x's entry list; MI values must be non-increasing.
  void add(const std::string& x, std::vector<TriggerEntry> entries);

  /// The stored MI of (x -> y), or 0 when the pair was pruned or never seen.
  double value(const std::string& x, const std::string& y) const;

  const std::vector<TriggerEntry>* entries(const std::string& x) const;

  /// Trigger words in byte order (the on-disk group order).
  std::vector<std::string> trigger_words_sorted() const;

  size_t word_count() const { return entries_.size(); }
  size_t entry_count() const;

  std::unordered_map<std::string, std::vector<TriggerEntry>>& mutable_entries() {
    return entries_;
  }
  void rebuild_index();

 private:
  TriggerMode mode_;
  bool normalized_;
  std::unordered_map<std::string, std::vector<TriggerEntry>> entries_;
  std::unordered_map<std::string, std::unordered_map<std::string, double>> index_;
};

/// Keeps, for every word in the left marginal, the k highest-MI pairs with
/// MI > 0. With add_count > 0 every vocabulary pair is a candidate (smoothing
/// gives unseen pairs nonzero MI); otherwise only co-occurring pairs are.
TriggerList build_trigger_list(const CooccurrenceCounts& counts, const SmoothingParams& smoothing,
                               long top_k);

/// Divides every per-word list by its maximum MI, making per-word maxima
/// exactly 1. Idempotent; ordering is unchanged.
TriggerList normalize_trigger_list(TriggerList list);

/// TSV with a `#mode=<intra|inter> normalized=<0|1>` header, one
/// `x<TAB>y<TAB>MI` line per entry, grouped by x, descending MI within group.
void save_trigger_list(const TriggerList& list, const std::string& path);
TriggerList load_trigger_list(const std::string& path);

}  // namespace mtconf
