// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtconf/score_vector.hpp"

namespace mtconf {

/// Per-word measure scores in a fixed order, plus a trailing constant bias
/// component 1, so a WeightVector acts affinely by plain dot product.
struct FeatureRow {
  std::vector<double> values;

  static FeatureRow with_bias(std::vector<double> scores) {
    scores.push_back(1.0);
    return FeatureRow{std::move(scores)};
  }
};

struct PerceptronOptions {
  int max_epochs = 100;
  double rate = 0.1;
  std::uint64_t seed = 0;
  bool averaged = true;  // averaged-perceptron variant; false returns the bare final weights
};

struct WeightVector {
  std::vector<double> weights;              // m+1 reals, bias last
  std::vector<std::string> measure_names;   // the ordering the weights were trained with
  int epochs_run = 0;
  double final_error = 0.0;                 // training error of the last epoch
  bool single_class = false;                // the training set had only one label
};

/// Classic perceptron: rows shuffled per epoch with the seeded generator,
/// w += rate * y * x on every misclassified row (y in {+1,-1}; a dot product
/// of exactly 0 counts as a mistake), early stop on a mistake-free epoch.
/// Labels: 1 = correct, 0 = incorrect.
WeightVector train_perceptron(const std::vector<FeatureRow>& rows, const std::vector<int>& labels,
                              const PerceptronOptions& options);

/// Affine combination w . row (bias included); raw linear scores, no
/// squashing — evaluation sweeps thresholds over the observed range.
std::vector<double> combined_confidence(const std::vector<FeatureRow>& rows,
                                        const WeightVector& weights);

/// Weights file: TSV header of measure names (bias last), one line of m+1
/// decimal weights.
void save_weights(const WeightVector& weights, const std::string& path);
WeightVector load_weights(const std::string& path);

}  // namespace mtconf
