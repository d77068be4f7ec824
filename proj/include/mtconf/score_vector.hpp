// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <vector>

namespace mtconf {

enum class ScoreStatus { scored, skipped_toolword };

const char* to_string(ScoreStatus status);

/// Per-word confidence scores aligned to a hypothesis sentence. Skipped
/// entries carry no score and are excluded from normalizations and (by the
/// default policy) from evaluation.
struct ScoreVector {
  std::vector<double> values;
  std::vector<ScoreStatus> status;
  bool degenerate_norm = false;  // set when a requested normalization had norm 0

  size_t size() const { return values.size(); }
  bool scored(size_t i) const { return status[i] == ScoreStatus::scored; }

  static ScoreVector sized(size_t n) {
    ScoreVector v;
    v.values.assign(n, 0.0);
    v.status.assign(n, ScoreStatus::scored);
    return v;
  }
};

}  // namespace mtconf
