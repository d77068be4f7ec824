// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/scoring.hpp"

#include <cmath>
#include <cstdlib>

#include "mtconf/error.hpp"

namespace mtconf {

const char* to_string(ScoreStatus status) {
  return status == ScoreStatus::scored ? "scored" : "skipped-toolword";
}

WeightFn WeightFn::exponential(double lambda) {
  if (lambda <= 0.0) {
    throw Error(ErrorCategory::domain, "exponential weighting needs lambda > 0");
  }
  return WeightFn(Kind::exponential, lambda, 0);
}

WeightFn WeightFn::window(long halfwidth) {
  if (halfwidth < 0) throw Error(ErrorCategory::domain, "window halfwidth must be >= 0");
  return WeightFn(Kind::window, 0.0, halfwidth);
}

double WeightFn::operator()(long distance) const {
  switch (kind_) {
    case Kind::constant: return 1.0;
    case Kind::exponential: return std::exp(-lambda_ * static_cast<double>(distance));
    case Kind::window: return distance <= halfwidth_ ? 1.0 : 0.0;
  }
  return 1.0;
}

ScoreVector intra_mi_confidence(const Sentence& hyp, const TriggerList& triggers,
                                const WeightFn& weight, const ToolWordSet& toolwords,
                                bool exclude_toolwords) {
  if (triggers.mode() != TriggerMode::intra) {
    throw Error(ErrorCategory::domain, "intra-MI scoring needs an intra-mode trigger list");
  }
  const long n = static_cast<long>(hyp.size());
  ScoreVector scores = ScoreVector::sized(hyp.size());
  for (long i = 0; i < n; ++i) {
    if (exclude_toolwords && toolwords.contains(hyp[static_cast<size_t>(i)])) {
      scores.status[static_cast<size_t>(i)] = ScoreStatus::skipped_toolword;
      continue;
    }
    double num = 0.0, den = 0.0;
    for (long j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::string& context = hyp[static_cast<size_t>(j)];
      if (exclude_toolwords && toolwords.contains(context)) continue;
      double w = weight(std::labs(i - j));
      if (w == 0.0) continue;
      num += w * triggers.value(context, hyp[static_cast<size_t>(i)]);
      den += w;
    }
    scores.values[static_cast<size_t>(i)] = den > 0.0 ? num / den : 0.0;
  }
  return scores;
}

ScoreVector inter_mi_confidence(const Sentence& src, const Sentence& hyp,
                                const TriggerList& triggers, const WeightFn& weight,
                                const ToolWordSet& toolwords, bool exclude_toolwords) {
  if (triggers.mode() != TriggerMode::inter) {
    throw Error(ErrorCategory::domain, "inter-MI scoring needs an inter-mode trigger list");
  }
  const long src_len = static_cast<long>(src.size());
  ScoreVector scores = ScoreVector::sized(hyp.size());
  for (long i = 0; i < static_cast<long>(hyp.size()); ++i) {
    if (exclude_toolwords && toolwords.contains(hyp[static_cast<size_t>(i)])) {
      scores.status[static_cast<size_t>(i)] = ScoreStatus::skipped_toolword;
      continue;
    }
    double num = 0.0, den = 0.0;
    for (long j = 0; j < src_len; ++j) {
      const std::string& source_word = src[static_cast<size_t>(j)];
      if (exclude_toolwords && toolwords.contains(source_word)) continue;
      double w = weight(std::labs(i - j));
      if (w == 0.0) continue;
      num += w * triggers.value(source_word, hyp[static_cast<size_t>(i)]);
      den += w;
    }
    scores.values[static_cast<size_t>(i)] = den > 0.0 ? num / den : 0.0;
  }
  return scores;
}

ScoreVector ngram_confidence(const Sentence& hyp, const NgramModel& model) {
  ScoreVector scores = ScoreVector::sized(hyp.size());
  scores.values = model.sentence_probs(hyp);
  return scores;
}

ScoreNorm parse_score_norm(const std::string& name) {
  if (name == "none") return ScoreNorm::none;
  if (name == "l1") return ScoreNorm::l1;
  if (name == "linf") return ScoreNorm::linf;
  throw Error(ErrorCategory::usage, "unknown normalization '" + name + "' (none, l1, linf)");
}

const char* to_string(ScoreNorm norm) {
  switch (norm) {
    case ScoreNorm::none: return "none";
    case ScoreNorm::l1: return "l1";
    case ScoreNorm::linf: return "linf";
  }
  return "none";
}

ScoreVector normalize_scores(const ScoreVector& scores, ScoreNorm kind) {
  if (kind == ScoreNorm::none) return scores;
  double norm = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!scores.scored(i)) continue;
    double a = std::fabs(scores.values[i]);
    norm = kind == ScoreNorm::l1 ? norm + a : std::max(norm, a);
  }
  ScoreVector out = scores;
  if (norm == 0.0) {
    out.degenerate_norm = true;
    return out;
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (out.scored(i)) out.values[i] /= norm;
  }
  return out;
}

}  // namespace mtconf
