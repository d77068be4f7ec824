// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/scorefile.hpp"

#include <string>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

void save_scores(const std::vector<Sentence>& hyp, const std::vector<ScoreVector>& scores,
                 const std::string& path) {
  if (hyp.size() != scores.size()) {
    throw Error(ErrorCategory::alignment, "hypothesis/score sentence count mismatch");
  }
  std::string out;
  for (size_t s = 0; s < hyp.size(); ++s) {
    if (hyp[s].size() != scores[s].size()) {
      throw Error(ErrorCategory::alignment,
                  "sentence " + std::to_string(s + 1) + ": token/score count mismatch");
    }
    for (size_t i = 0; i < hyp[s].size(); ++i) {
      out += std::to_string(s + 1);
      out += '\t';
      out += std::to_string(i + 1);
      out += '\t';
      out += hyp[s][i];
      out += '\t';
      out += format_double(scores[s].scored(i) ? scores[s].values[i] : 0.0);
      out += '\t';
      out += to_string(scores[s].status[i]);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

ScoreFile load_scores(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  ScoreFile file;
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) -> Error {
      return Error(ErrorCategory::format,
                   "'" + path + "' line " + std::to_string(n + 1) + ": " + msg);
    };
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 5) throw fail("expected 5 tab-separated columns");
    long sentence = 0, position = 0;
    double score = 0.0;
    if (!parse_long(fields[0], sentence) || !parse_long(fields[1], position)) {
      throw fail("non-numeric sentence index or position");
    }
    if (!parse_double(fields[3], score)) throw fail("non-numeric score");
    ScoreStatus status;
    if (fields[4] == "scored") {
      status = ScoreStatus::scored;
    } else if (fields[4] == "skipped-toolword") {
      status = ScoreStatus::skipped_toolword;
    } else {
      throw fail("unknown status '" + fields[4] + "'");
    }
    long expected_sentence = static_cast<long>(file.words.size());
    if (sentence == expected_sentence + 1 && position == 1) {
      file.words.emplace_back();
      file.scores.emplace_back();
    } else if (file.words.empty() || sentence != expected_sentence ||
               position != static_cast<long>(file.words.back().size()) + 1) {
      throw fail("rows out of order (expected contiguous 1-based indices)");
    }
    file.words.back().push_back(fields[2]);
    file.scores.back().values.push_back(score);
    file.scores.back().status.push_back(status);
  }
  return file;
}

namespace {

void check_aligned(const std::vector<ScoreFile>& files) {
  if (files.empty()) throw Error(ErrorCategory::domain, "no score files given");
  for (size_t f = 1; f < files.size(); ++f) {
    if (files[f].sentence_count() != files[0].sentence_count()) {
      throw Error(ErrorCategory::alignment,
                  "score files disagree on sentence count: " +
                      std::to_string(files[0].sentence_count()) + " vs " +
                      std::to_string(files[f].sentence_count()));
    }
    for (size_t s = 0; s < files[f].words.size(); ++s) {
      if (files[f].words[s] != files[0].words[s]) {
        throw Error(ErrorCategory::alignment,
                    "sentence " + std::to_string(s + 1) +
                        ": score files disagree on the hypothesis tokens");
      }
    }
  }
}

}  // namespace

FusionRows assemble_rows(const std::vector<ScoreFile>& files) {
  check_aligned(files);
  FusionRows out;
  for (size_t s = 0; s < files[0].words.size(); ++s) {
    for (size_t i = 0; i < files[0].words[s].size(); ++i) {
      std::vector<double> values;
      values.reserve(files.size());
      bool all_scored = true;
      for (const ScoreFile& file : files) {
        if (!file.scores[s].scored(i)) {
          all_scored = false;
          break;
        }
        values.push_back(file.scores[s].values[i]);
      }
      if (!all_scored) continue;
      out.rows.push_back(FeatureRow::with_bias(std::move(values)));
      out.positions.emplace_back(s, i);
    }
  }
  return out;
}

std::vector<int> gather_labels(const FusionRows& rows, const LabeledReference& reference) {
  std::vector<int> labels;
  labels.reserve(rows.rows.size());
  for (const auto& [s, i] : rows.positions) {
    if (s >= reference.sentences.size() || i >= reference.sentences[s].size()) {
      throw Error(ErrorCategory::alignment,
                  "sentence " + std::to_string(s + 1) + ": reference labels too short");
    }
    labels.push_back(reference.sentences[s][i]);
  }
  return labels;
}

std::vector<ScoreVector> combined_scores(const std::vector<ScoreFile>& files,
                                         const WeightVector& weights) {
  check_aligned(files);
  std::vector<ScoreVector> out;
  out.reserve(files[0].words.size());
  for (size_t s = 0; s < files[0].words.size(); ++s) {
    out.push_back(ScoreVector::sized(files[0].words[s].size()));
  }
  FusionRows rows = assemble_rows(files);
  std::vector<double> combined = combined_confidence(rows.rows, weights);
  // Everything is skipped until a fully-scored row proves otherwise.
  for (auto& vec : out) {
    vec.status.assign(vec.size(), ScoreStatus::skipped_toolword);
  }
  for (size_t r = 0; r < rows.rows.size(); ++r) {
    auto [s, i] = rows.positions[r];
    out[s].values[i] = combined[r];
    out[s].status[i] = ScoreStatus::scored;
  }
  return out;
}

}  // namespace mtconf
