// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>

#include "mtconf/corpus.hpp"
#include "mtconf/lm.hpp"
#include "mtconf/score_vector.hpp"
#include "mtconf/triggers.hpp"

namespace mtconf {

/// Distance weighting for the context sums: constant (positions ignored),
/// exponential decay exp(-lambda * d), or a hard window (1 for d <= halfwidth,
/// else 0 — a window of halfwidth 4 is the centred window of width 9).
class WeightFn {
 public:
  enum class Kind { constant, exponential, window };

  static WeightFn constant() { return WeightFn(Kind::constant, 0.0, 0); }
  static WeightFn exponential(double lambda);
  static WeightFn window(long halfwidth);

  double operator()(long distance) const;

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  long halfwidth() const { return halfwidth_; }

 private:
  WeightFn(Kind kind, double lambda, long halfwidth)
      : kind_(kind), lambda_(lambda), halfwidth_(halfwidth) {}

  Kind kind_;
  double lambda_;
  long halfwidth_;
};

/// Weighted average trigger MI between each hypothesis word and the other
/// words of the same sentence. Tool words, when excluded, drop out of the
/// context sums and are marked skipped as scored words; they still occupy
/// positions, so distances refer to the original sentence. A word with an
/// empty context scores 0.
ScoreVector intra_mi_confidence(const Sentence& hyp, const TriggerList& triggers,
                                const WeightFn& weight, const ToolWordSet& toolwords,
                                bool exclude_toolwords);

/// Weighted average inter-lingual trigger MI between each hypothesis word and
/// the source sentence's words; |i-j| mixes a target and a source position,
/// which bounds distortion when a window weight is used.
ScoreVector inter_mi_confidence(const Sentence& src, const Sentence& hyp,
                                const TriggerList& triggers, const WeightFn& weight,
                                const ToolWordSet& toolwords, bool exclude_toolwords);

/// Backoff n-gram probability of each word given its predecessors. Every word
/// is scored; no tool-word rule applies here.
ScoreVector ngram_confidence(const Sentence& hyp, const NgramModel& model);

enum class ScoreNorm { none, l1, linf };

ScoreNorm parse_score_norm(const std::string& name);
const char* to_string(ScoreNorm norm);

/// Sentence-level normalization over scored entries only. A zero norm leaves
/// the scores unchanged and sets the degenerate flag.
ScoreVector normalize_scores(const ScoreVector& scores, ScoreNorm kind);

}  // namespace mtconf
