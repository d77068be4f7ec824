// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mtconf/corpus.hpp"
#include "mtconf/eval.hpp"
#include "mtconf/fusion.hpp"
#include "mtconf/score_vector.hpp"

namespace mtconf {

/// A per-measure score file: one TSV row per hypothesis word,
/// `sentence_index<TAB>position<TAB>word<TAB>score<TAB>status` (1-based
/// indices).
struct ScoreFile {
  std::vector<Sentence> words;
  std::vector<ScoreVector> scores;

  size_t sentence_count() const { return words.size(); }
};

void save_scores(const std::vector<Sentence>& hyp, const std::vector<ScoreVector>& scores,
                 const std::string& path);
ScoreFile load_scores(const std::string& path);

/// Word-level rows assembled from several aligned score files (one column per
/// file, bias appended). Rows exist only where every measure scored the word;
/// positions records (sentence, word) per row.
struct FusionRows {
  std::vector<FeatureRow> rows;
  std::vector<std::pair<size_t, size_t>> positions;
};

FusionRows assemble_rows(const std::vector<ScoreFile>& files);

/// Gold labels for each assembled row.
std::vector<int> gather_labels(const FusionRows& rows, const LabeledReference& reference);

/// Applies trained weights to aligned score files, producing per-sentence
/// combined ScoreVectors (skipped wherever any measure skipped).
std::vector<ScoreVector> combined_scores(const std::vector<ScoreFile>& files,
                                         const WeightVector& weights);

}  // namespace mtconf
