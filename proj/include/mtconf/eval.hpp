// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <vector>

#include "mtconf/score_vector.hpp"

namespace mtconf {

/// Per-sentence, per-word gold labels: 1 = correct, 0 = incorrect, aligned to
/// hypothesis tokens.
struct LabeledReference {
  std::vector<std::vector<int>> sentences;

  size_t word_count() const;
};

/// One line per hypothesis sentence, space-separated 1/0.
LabeledReference load_labels(const std::string& path);

struct ConfusionCounts {
  long correct_accepted = 0;   // CA
  long false_rejected = 0;     // FR: correct word rejected
  long correct_rejected = 0;   // CR
  long false_accepted = 0;     // FA: incorrect word accepted
  long total() const { return correct_accepted + false_rejected + correct_rejected + false_accepted; }
};

struct MetricSet {
  double cer, car, crr, f;
};

struct RocPoint {
  double threshold, car, crr, cer, f;
};

enum class ToolwordPolicy { exclude, count };

ToolwordPolicy parse_toolword_policy(const std::string& name);

struct SweepStrategy {
  enum class Kind { grid, quantile };
  Kind kind = Kind::quantile;
  double lo = 0.0, hi = 1.0;  // grid only
  int steps = 100;

  static SweepStrategy grid(double lo, double hi, int steps);
  static SweepStrategy quantile(int steps);
};

/// A test set flattened to word level: scores with statuses zipped against
/// gold labels. Construction checks per-sentence alignment.
struct EvalDataset {
  std::vector<double> scores;
  std::vector<ScoreStatus> status;
  std::vector<int> labels;

  static EvalDataset zip(const std::vector<ScoreVector>& scores, const LabeledReference& reference);
  size_t size() const { return scores.size(); }
};

/// Labels a word correct iff its score is strictly above the threshold.
/// Returns 1 = correct, 0 = incorrect, -1 = skipped (no label).
std::vector<int> classify(const ScoreVector& scores, double threshold);
std::vector<int> classify(const std::vector<double>& scores, const std::vector<ScoreStatus>& status,
                          double threshold);

/// Tallies predictions against gold labels. Skipped entries are dropped under
/// `exclude`; under `count` they are treated as rejected (no score clears any
/// threshold).
ConfusionCounts confusion(const std::vector<int>& predicted, const std::vector<int>& gold,
                          ToolwordPolicy policy);

/// CER, CAR, CRR and their harmonic F. A missing class (zero denominator)
/// defines the corresponding rate as 1, which keeps the identity
/// CER*N = (1-CAR)*Nc + (1-CRR)*Ni intact.
MetricSet metrics(const ConfusionCounts& counts);

/// Harmonic mean of CAR and CRR; 0 when both are 0.
double harmonic_f(double car, double crr);

/// Metrics at every threshold of the strategy plus sentinel thresholds below
/// the minimum and above the maximum score, so the endpoints (CAR=1, CRR=0)
/// and (CAR=0, CRR=1) always appear. Points come back in ascending threshold
/// order.
std::vector<RocPoint> roc_sweep(const EvalDataset& dataset, const SweepStrategy& strategy,
                                ToolwordPolicy policy = ToolwordPolicy::exclude);

struct ReportSummary {
  RocPoint best_f;   // highest F; ties -> lowest threshold
  RocPoint min_cer;  // lowest CER; ties -> lowest threshold
};

/// Writes the sweep as TSV (`threshold CAR CRR CER F`) with summary comment
/// lines for the best-F and min-CER operating points; byte-reproducible.
ReportSummary emit_report(const std::vector<RocPoint>& points, const std::string& path);

}  // namespace mtconf
