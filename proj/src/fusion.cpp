// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Fisher-Yates with rng() % n: identical shuffles on every platform.
void shuffle_indices(std::vector<size_t>& indices, std::mt19937_64& rng) {
  for (size_t i = indices.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

WeightVector train_perceptron(const std::vector<FeatureRow>& rows, const std::vector<int>& labels,
                              const PerceptronOptions& options) {
  if (rows.empty()) throw Error(ErrorCategory::domain, "perceptron training set is empty");
  if (rows.size() != labels.size()) {
    throw Error(ErrorCategory::domain, "row/label count mismatch");
  }
  if (options.rate <= 0.0) throw Error(ErrorCategory::domain, "learning rate must be > 0");
  if (options.max_epochs < 1) throw Error(ErrorCategory::domain, "epoch budget must be >= 1");
  const size_t dim = rows[0].values.size();
  for (const FeatureRow& row : rows) {
    if (row.values.size() != dim) {
      throw Error(ErrorCategory::domain, "feature rows have mixed dimensions");
    }
  }

  WeightVector result;
  result.single_class =
      std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; });

  std::vector<double> w(dim, 0.0);
  std::vector<double> w_sum(dim, 0.0);
  long steps = 0;
  std::mt19937_64 rng(options.seed);
  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);

  long last_mistakes = 0;
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    shuffle_indices(order, rng);
    long mistakes = 0;
    for (size_t idx : order) {
      double y = labels[idx] == 1 ? 1.0 : -1.0;
      if (y * dot(w, rows[idx].values) <= 0.0) {
        for (size_t d = 0; d < dim; ++d) w[d] += options.rate * y * rows[idx].values[d];
        ++mistakes;
      }
      for (size_t d = 0; d < dim; ++d) w_sum[d] += w[d];
      ++steps;
    }
    ++result.epochs_run;
    last_mistakes = mistakes;
    if (mistakes == 0) break;
  }
  result.final_error = static_cast<double>(last_mistakes) / static_cast<double>(rows.size());

  if (options.averaged) {
    result.weights.resize(dim);
    for (size_t d = 0; d < dim; ++d) result.weights[d] = w_sum[d] / static_cast<double>(steps);
  } else {
    result.weights = std::move(w);
  }
  return result;
}

std::vector<double> combined_confidence(const std::vector<FeatureRow>& rows,
                                        const WeightVector& weights) {
  std::vector<double> scores;
  scores.reserve(rows.size());
  for (const FeatureRow& row : rows) {
    if (row.values.size() != weights.weights.size()) {
      throw Error(ErrorCategory::domain, "feature row dimension does not match the weight vector");
    }
    scores.push_back(dot(weights.weights, row.values));
  }
  return scores;
}

void save_weights(const WeightVector& weights, const std::string& path) {
  std::string out;
  for (const std::string& name : weights.measure_names) {
    out += name;
    out += '\t';
  }
  out += "bias\n";
  for (size_t i = 0; i < weights.weights.size(); ++i) {
    if (i > 0) out += '\t';
    out += format_double_exact(weights.weights[i]);
  }
  out += '\n';
  write_text_file(path, out);
}

WeightVector load_weights(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  if (lines.size() < 2) {
    throw Error(ErrorCategory::format, "'" + path + "': expected a header and a weight line");
  }
  WeightVector result;
  std::vector<std::string> names = split_tokens(lines[0]);
  if (names.empty() || names.back() != "bias") {
    throw Error(ErrorCategory::format, "'" + path + "' line 1: header must end with 'bias'");
  }
  names.pop_back();
  result.measure_names = std::move(names);
  for (const std::string& field : split_tokens(lines[1])) {
    double v;
    if (!parse_double(field, v)) {
      throw Error(ErrorCategory::format, "'" + path + "' line 2: non-numeric weight '" + field + "'");
    }
    result.weights.push_back(v);
  }
  if (result.weights.size() != result.measure_names.size() + 1) {
    throw Error(ErrorCategory::format,
                "'" + path + "': " + std::to_string(result.measure_names.size()) +
                    " measures require " + std::to_string(result.measure_names.size() + 1) +
                    " weights, found " + std::to_string(result.weights.size()));
  }
  return result;
}

}  // namespace mtconf
