// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/eval.hpp"

#include <algorithm>
#include <cmath>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

size_t LabeledReference::word_count() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

LabeledReference load_labels(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  LabeledReference reference;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::vector<int> labels;
    for (const std::string& token : split_tokens(lines[i])) {
      if (token == "1") {
        labels.push_back(1);
      } else if (token == "0") {
        labels.push_back(0);
      } else {
        throw Error(ErrorCategory::format, "'" + path + "' line " + std::to_string(i + 1) +
                                               ": labels must be 0 or 1, got '" + token + "'");
      }
    }
    reference.sentences.push_back(std::move(labels));
  }
  return reference;
}

ToolwordPolicy parse_toolword_policy(const std::string& name) {
  if (name == "exclude") return ToolwordPolicy::exclude;
  if (name == "count") return ToolwordPolicy::count;
  throw Error(ErrorCategory::usage, "unknown tool-word policy '" + name + "' (exclude, count)");
}

SweepStrategy SweepStrategy::grid(double lo, double hi, int steps) {
  if (steps < 2) throw Error(ErrorCategory::domain, "threshold sweep needs at least 2 steps");
  if (hi < lo) throw Error(ErrorCategory::domain, "grid sweep needs lo <= hi");
  SweepStrategy s;
  s.kind = Kind::grid;
  s.lo = lo;
  s.hi = hi;
  s.steps = steps;
  return s;
}

SweepStrategy SweepStrategy::quantile(int steps) {
  if (steps < 2) throw Error(ErrorCategory::domain, "threshold sweep needs at least 2 steps");
  SweepStrategy s;
  s.kind = Kind::quantile;
  s.steps = steps;
  return s;
}

EvalDataset EvalDataset::zip(const std::vector<ScoreVector>& scores,
                             const LabeledReference& reference) {
  if (scores.size() != reference.sentences.size()) {
    throw Error(ErrorCategory::alignment,
                "score set has " + std::to_string(scores.size()) + " sentences, reference has " +
                    std::to_string(reference.sentences.size()));
  }
  EvalDataset dataset;
  for (size_t s = 0; s < scores.size(); ++s) {
    if (scores[s].size() != reference.sentences[s].size()) {
      throw Error(ErrorCategory::alignment,
                  "sentence " + std::to_string(s + 1) + ": " + std::to_string(scores[s].size()) +
                      " scored words vs " + std::to_string(reference.sentences[s].size()) +
                      " reference labels");
    }
    for (size_t i = 0; i < scores[s].size(); ++i) {
      dataset.scores.push_back(scores[s].values[i]);
      dataset.status.push_back(scores[s].status[i]);
      dataset.labels.push_back(reference.sentences[s][i]);
    }
  }
  return dataset;
}

std::vector<int> classify(const std::vector<double>& scores, const std::vector<ScoreStatus>& status,
                          double threshold) {
  std::vector<int> labels(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    if (status[i] != ScoreStatus::scored) {
      labels[i] = -1;
    } else {
      labels[i] = scores[i] > threshold ? 1 : 0;  // strictly above
    }
  }
  return labels;
}

std::vector<int> classify(const ScoreVector& scores, double threshold) {
  return classify(scores.values, scores.status, threshold);
}

ConfusionCounts confusion(const std::vector<int>& predicted, const std::vector<int>& gold,
                          ToolwordPolicy policy) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCategory::alignment, "prediction/reference length mismatch: " +
                                              std::to_string(predicted.size()) + " vs " +
                                              std::to_string(gold.size()));
  }
  ConfusionCounts counts;
  for (size_t i = 0; i < predicted.size(); ++i) {
    int pred = predicted[i];
    if (pred == -1) {
      if (policy == ToolwordPolicy::exclude) continue;
      pred = 0;  // counted skips are rejections: no score clears a threshold
    }
    if (gold[i] == 1) {
      pred == 1 ? ++counts.correct_accepted : ++counts.false_rejected;
    } else {
      pred == 1 ? ++counts.false_accepted : ++counts.correct_rejected;
    }
  }
  return counts;
}

double harmonic_f(double car, double crr) {
  double sum = car + crr;
  if (sum == 0.0) return 0.0;
  return 2.0 * car * crr / sum;
}

MetricSet metrics(const ConfusionCounts& counts) {
  long total = counts.total();
  if (total == 0) throw Error(ErrorCategory::domain, "metrics over an empty confusion table");
  long n_correct = counts.correct_accepted + counts.false_rejected;
  long n_incorrect = counts.correct_rejected + counts.false_accepted;
  MetricSet m;
  m.cer = static_cast<double>(counts.false_rejected + counts.false_accepted) /
          static_cast<double>(total);
  m.car = n_correct == 0
              ? 1.0
              : static_cast<double>(counts.correct_accepted) / static_cast<double>(n_correct);
  m.crr = n_incorrect == 0
              ? 1.0
              : static_cast<double>(counts.correct_rejected) / static_cast<double>(n_incorrect);
  m.f = harmonic_f(m.car, m.crr);
  return m;
}

std::vector<RocPoint> roc_sweep(const EvalDataset& dataset, const SweepStrategy& strategy,
                                ToolwordPolicy policy) {
  size_t labeled = 0;
  double lo_score = 0.0, hi_score = 0.0;
  bool first = true;
  for (size_t i = 0; i < dataset.size(); ++i) {
    if (policy == ToolwordPolicy::exclude && dataset.status[i] != ScoreStatus::scored) continue;
    ++labeled;
    if (dataset.status[i] != ScoreStatus::scored) continue;
    if (first) {
      lo_score = hi_score = dataset.scores[i];
      first = false;
    } else {
      lo_score = std::min(lo_score, dataset.scores[i]);
      hi_score = std::max(hi_score, dataset.scores[i]);
    }
  }
  if (labeled == 0) throw Error(ErrorCategory::domain, "sweep over a dataset with no labeled words");

  std::vector<double> thresholds;
  if (strategy.kind == SweepStrategy::Kind::grid) {
    if (strategy.steps < 2) throw Error(ErrorCategory::domain, "threshold sweep needs at least 2 steps");
    for (int s = 0; s < strategy.steps; ++s) {
      double t = strategy.lo + (strategy.hi - strategy.lo) * static_cast<double>(s) /
                                   static_cast<double>(strategy.steps - 1);
      thresholds.push_back(t);
    }
  } else {
    if (strategy.steps < 2) throw Error(ErrorCategory::domain, "threshold sweep needs at least 2 steps");
    std::vector<double> observed;
    for (size_t i = 0; i < dataset.size(); ++i) {
      if (dataset.status[i] == ScoreStatus::scored) observed.push_back(dataset.scores[i]);
    }
    std::sort(observed.begin(), observed.end());
    if (observed.empty()) observed.push_back(0.0);
    for (int s = 0; s < strategy.steps; ++s) {
      double q = static_cast<double>(s) / static_cast<double>(strategy.steps - 1);
      size_t idx = static_cast<size_t>(q * static_cast<double>(observed.size() - 1));
      thresholds.push_back(observed[idx]);
    }
  }
  // Sentinels guarantee the all-accept and all-reject endpoints.
  thresholds.push_back(lo_score - 1.0);
  thresholds.push_back(hi_score + 1.0);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<RocPoint> points;
  points.reserve(thresholds.size());
  for (double t : thresholds) {
    ConfusionCounts counts =
        confusion(classify(dataset.scores, dataset.status, t), dataset.labels, policy);
    MetricSet m = metrics(counts);
    points.push_back({t, m.car, m.crr, m.cer, m.f});
  }
  return points;
}

ReportSummary emit_report(const std::vector<RocPoint>& points, const std::string& path) {
  if (points.empty()) throw Error(ErrorCategory::domain, "cannot report an empty sweep");
  ReportSummary summary{points[0], points[0]};
  for (const RocPoint& p : points) {
    if (p.f > summary.best_f.f) summary.best_f = p;
    if (p.cer < summary.min_cer.cer) summary.min_cer = p;
  }
  std::string out = "threshold\tCAR\tCRR\tCER\tF\n";
  auto row = [](const RocPoint& p) {
    return format_double(p.threshold) + '\t' + format_double(p.car) + '\t' + format_double(p.crr) +
           '\t' + format_double(p.cer) + '\t' + format_double(p.f);
  };
  for (const RocPoint& p : points) {
    out += row(p);
    out += '\n';
  }
  out += "# best-F\t" + row(summary.best_f) + '\n';
  out += "# min-CER\t" + row(summary.min_cer) + '\n';
  write_text_file(path, out);
  return summary;
}

}  // namespace mtconf
