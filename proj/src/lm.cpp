// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/lm.hpp"

#include <algorithm>
#include <cmath>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

namespace {
constexpr double kLog10Floor = -99.0;  // ARPA convention for "never predicted"
}

int NgramModel::id_or_unk(const std::string& word) const {
  auto id = vocab_.find(word);
  return id ? *id : unk_id_;
}

const NgramModel::Node* NgramModel::find(const Gram& gram) const {
  size_t level = gram.size();
  if (level == 0 || level > levels_.size()) return nullptr;
  const auto& map = levels_[level - 1];
  auto it = map.find(gram);
  return it == map.end() ? nullptr : &it->second;
}

double NgramModel::backoff_prob(const Gram& context, int word) const {
  double bow = 1.0;
  for (size_t drop = 0; drop <= context.size(); ++drop) {
    Gram gram(context.begin() + static_cast<long>(drop), context.end());
    gram.push_back(word);
    if (const Node* node = find(gram)) {
      return bow * std::pow(10.0, node->log10_prob);
    }
    gram.pop_back();
    if (!gram.empty()) {
      if (const Node* ctx = find(gram)) bow *= std::pow(10.0, ctx->log10_bow);
    }
  }
  return 0.0;
}

double NgramModel::word_prob(const std::string& word, std::span<const std::string> history) const {
  size_t keep = std::min(history.size(), static_cast<size_t>(order_ - 1));
  Gram context;
  context.reserve(static_cast<size_t>(order_ - 1));
  for (size_t i = keep; i < static_cast<size_t>(order_ - 1); ++i) context.push_back(bos_id_);
  for (size_t i = history.size() - keep; i < history.size(); ++i) {
    context.push_back(id_or_unk(history[i]));
  }
  return backoff_prob(context, id_or_unk(word));
}

double NgramModel::log10_word_prob(const std::string& word,
                                   std::span<const std::string> history) const {
  return std::log10(word_prob(word, history));
}

std::vector<double> NgramModel::sentence_probs(const Sentence& sentence) const {
  std::vector<double> probs;
  probs.reserve(sentence.size());
  for (size_t i = 0; i < sentence.size(); ++i) {
    probs.push_back(word_prob(sentence[i], std::span(sentence.data(), i)));
  }
  return probs;
}

std::vector<std::string> NgramModel::predicted_words() const {
  std::vector<std::string> words;
  for (int id = 0; id < vocab_.size(); ++id) {
    if (id != bos_id_) words.push_back(vocab_.word(id));
  }
  return words;
}

std::vector<std::vector<std::string>> NgramModel::stored_grams(int length) const {
  std::vector<std::vector<std::string>> grams;
  const auto& map = levels_.at(static_cast<size_t>(length) - 1);
  grams.reserve(map.size());
  for (const auto& [gram, node] : map) {
    std::vector<std::string> words;
    words.reserve(gram.size());
    for (int id : gram) words.push_back(vocab_.word(id));
    grams.push_back(std::move(words));
  }
  return grams;
}

NgramModel train_ngram(const Corpus& corpus, const LmTrainOptions& options) {
  if (options.order < 1) throw Error(ErrorCategory::domain, "n-gram order must be at least 1");
  if (corpus.empty()) throw Error(ErrorCategory::domain, "cannot train a model on an empty corpus");
  if (options.smoothing == LmSmoothing::add_k && options.add_k < 0.0) {
    throw Error(ErrorCategory::domain, "additive smoothing constant must be non-negative");
  }

  NgramModel model;
  const int n = options.order;
  model.order_ = n;
  model.unk_id_ = model.vocab_.add(NgramModel::kUnknown);
  model.bos_id_ = model.vocab_.add(NgramModel::kSentenceBegin);
  model.eos_id_ = model.vocab_.add(NgramModel::kSentenceEnd);
  model.levels_.resize(static_cast<size_t>(n));

  std::unordered_map<std::string, long> token_counts;
  for (const Sentence& s : corpus) {
    for (const std::string& w : s) ++token_counts[w];
  }

  using Gram = NgramModel::Gram;
  using GramHash = NgramModel::GramHash;
  std::vector<std::unordered_map<Gram, long, GramHash>> window_counts(static_cast<size_t>(n));
  for (const Sentence& s : corpus) {
    std::vector<int> seq(static_cast<size_t>(n - 1), model.bos_id_);
    seq.reserve(seq.size() + s.size() + 1);
    for (const std::string& w : s) {
      seq.push_back(token_counts[w] >= options.min_word_count ? model.vocab_.add(w)
                                                              : model.unk_id_);
    }
    seq.push_back(model.eos_id_);
    for (int m = 1; m <= n; ++m) {
      auto& counts = window_counts[static_cast<size_t>(m) - 1];
      for (size_t start = 0; start + static_cast<size_t>(m) <= seq.size(); ++start) {
        ++counts[Gram(seq.begin() + static_cast<long>(start),
                      seq.begin() + static_cast<long>(start) + m)];
      }
    }
  }

  const bool witten_bell = options.smoothing == LmSmoothing::witten_bell;
  const double k = options.smoothing == LmSmoothing::add_k ? options.add_k : 0.0;
  // Prediction vocabulary: everything but <s>.
  const double v_pred = static_cast<double>(model.vocab_.size() - 1);

  // Unigrams: store the whole prediction vocabulary (smoothed estimates are
  // all positive); MLE stores observed words only.
  {
    const auto& c1 = window_counts[0];
    double total = 0.0;
    long types = 0;
    for (const auto& [gram, count] : c1) {
      if (gram[0] == model.bos_id_) continue;
      total += static_cast<double>(count);
      ++types;
    }
    auto& level = model.levels_[0];
    for (int id = 0; id < model.vocab_.size(); ++id) {
      if (id == model.bos_id_) continue;
      auto it = c1.find(Gram{id});
      double c = it == c1.end() ? 0.0 : static_cast<double>(it->second);
      double p;
      if (witten_bell) {
        double t = static_cast<double>(types);
        p = (c + t / v_pred) / (total + t);
      } else {
        p = (c + k) / (total + k * v_pred);
      }
      if (p > 0.0) level[Gram{id}] = {std::log10(p), 0.0};
    }
    if (c1.count(Gram{model.bos_id_}) > 0) {
      level[Gram{model.bos_id_}] = {kLog10Floor, 0.0};
    }
  }

  for (int m = 2; m <= n; ++m) {
    const auto& cm = window_counts[static_cast<size_t>(m) - 1];
    std::unordered_map<Gram, std::pair<double, long>, GramHash> context_stats;  // total, types
    for (const auto& [gram, count] : cm) {
      if (gram.back() == model.bos_id_) continue;
      Gram h(gram.begin(), gram.end() - 1);
      auto& stats = context_stats[h];
      stats.first += static_cast<double>(count);
      ++stats.second;
    }
    auto& level = model.levels_[static_cast<size_t>(m) - 1];
    const auto& lower = model.levels_[static_cast<size_t>(m) - 2];
    for (const auto& [gram, count] : cm) {
      if (gram.back() == model.bos_id_) {
        level[gram] = {kLog10Floor, 0.0};
        continue;
      }
      Gram h(gram.begin(), gram.end() - 1);
      const auto& [total, types] = context_stats.at(h);
      double p;
      if (witten_bell) {
        Gram suffix(gram.begin() + 1, gram.end());
        double p_lower = std::pow(10.0, lower.at(suffix).log10_prob);
        double t = static_cast<double>(types);
        p = (static_cast<double>(count) + t * p_lower) / (total + t);
      } else {
        p = (static_cast<double>(count) + k) / (total + k * v_pred);
      }
      level[gram] = {std::log10(p), 0.0};
    }
  }

  // Backoff weights: the leftover probability mass of each context divided by
  // the lower-order mass of its unseen continuations.
  for (int m = 1; m < n; ++m) {
    auto& level = model.levels_[static_cast<size_t>(m) - 1];
    const auto& upper = model.levels_[static_cast<size_t>(m)];
    auto lower_of = [&](const Gram& gram) {
      return std::pow(10.0, model.levels_[gram.size() - 1].at(gram).log10_prob);
    };
    std::unordered_map<Gram, std::pair<double, double>, GramHash> sums;  // S_hi, S_lo
    for (const auto& [gram, node] : upper) {
      if (gram.back() == model.bos_id_) continue;
      Gram h(gram.begin(), gram.end() - 1);
      Gram suffix(gram.begin() + 1, gram.end());
      auto& s = sums[h];
      s.first += std::pow(10.0, node.log10_prob);
      s.second += lower_of(suffix);
    }
    for (const auto& [h, s] : sums) {
      auto it = level.find(h);
      if (it == level.end()) continue;
      double num = std::max(1.0 - s.first, 0.0);
      double den = 1.0 - s.second;
      double bow = den <= 1e-12 ? 1.0 : num / den;
      it->second.log10_bow = std::log10(std::max(bow, 1e-99));
    }
  }
  return model;
}

namespace {

struct ArpaLine {
  double prob;
  std::vector<std::string> words;
  double bow;
  bool has_bow;
};

bool parse_arpa_line(const std::string& line, int order, ArpaLine& out) {
  std::vector<std::string> fields = split_tokens(line);
  size_t expected_min = static_cast<size_t>(order) + 1;
  if (fields.size() < expected_min || fields.size() > expected_min + 1) return false;
  if (!parse_double(fields[0], out.prob)) return false;
  out.words.assign(fields.begin() + 1, fields.begin() + 1 + order);
  out.has_bow = fields.size() == expected_min + 1;
  out.bow = 0.0;
  if (out.has_bow && !parse_double(fields.back(), out.bow)) return false;
  return true;
}

}  // namespace

NgramModel load_arpa(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  size_t i = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorCategory::format, "'" + path + "' line " + std::to_string(i + 1) + ": " + msg);
  };

  while (i < lines.size() && split_tokens(lines[i]).empty()) ++i;
  if (i >= lines.size() || lines[i] != "\\data\\") throw fail("expected \\data\\ header");
  ++i;

  std::vector<long> declared;  // declared[m-1] = entry count for order m
  while (i < lines.size()) {
    std::vector<std::string> fields = split_tokens(lines[i]);
    if (fields.empty()) {
      ++i;
      break;
    }
    if (fields.size() != 2 || fields[0] != "ngram") throw fail("expected 'ngram N=COUNT'");
    size_t eq = fields[1].find('=');
    long ord = 0, cnt = 0;
    if (eq == std::string::npos || !parse_long(fields[1].substr(0, eq), ord) ||
        !parse_long(fields[1].substr(eq + 1), cnt) || ord < 1) {
      throw fail("malformed ngram count '" + fields[1] + "'");
    }
    if (static_cast<size_t>(ord) > declared.size()) declared.resize(static_cast<size_t>(ord), 0);
    declared[static_cast<size_t>(ord) - 1] = cnt;
    ++i;
  }
  if (declared.empty()) throw fail("no ngram counts declared");

  NgramModel model;
  model.order_ = static_cast<int>(declared.size());
  model.levels_.resize(declared.size());

  int expected_order = 1;
  while (i < lines.size()) {
    if (split_tokens(lines[i]).empty()) {
      ++i;
      continue;
    }
    if (lines[i] == "\\end\\") {
      for (size_t m = static_cast<size_t>(expected_order); m <= declared.size(); ++m) {
        if (declared[m - 1] != 0) {
          throw fail("missing \\" + std::to_string(m) + "-grams: section");
        }
      }
      // Resolve reserved symbols (absent ids stay -1 and match nothing).
      auto resolve = [&](const char* w) {
        auto id = model.vocab_.find(w);
        return id ? *id : -1;
      };
      model.unk_id_ = resolve(NgramModel::kUnknown);
      model.bos_id_ = resolve(NgramModel::kSentenceBegin);
      model.eos_id_ = resolve(NgramModel::kSentenceEnd);
      return model;
    }
    int section = 0;
    unsigned long parsed_order = 0;
    if (lines[i].size() > 8 && lines[i][0] == '\\' &&
        lines[i].substr(lines[i].size() - 7) == "-grams:" &&
        sscanf(lines[i].c_str(), "\\%lu-grams:", &parsed_order) == 1) {
      section = static_cast<int>(parsed_order);
    } else {
      throw fail("expected an n-gram section header, got '" + lines[i] + "'");
    }
    if (section < expected_order || static_cast<size_t>(section) > declared.size()) {
      throw fail("unexpected section order " + std::to_string(section));
    }
    for (int m = expected_order; m < section; ++m) {
      if (declared[static_cast<size_t>(m) - 1] != 0) {
        throw fail("missing \\" + std::to_string(m) + "-grams: section");
      }
    }
    ++i;
    long entries = 0;
    auto& level = model.levels_[static_cast<size_t>(section) - 1];
    while (i < lines.size() && !split_tokens(lines[i]).empty() && lines[i][0] != '\\') {
      ArpaLine parsed;
      if (!parse_arpa_line(lines[i], section, parsed)) {
        throw fail("malformed " + std::to_string(section) + "-gram entry");
      }
      NgramModel::Gram gram;
      gram.reserve(parsed.words.size());
      for (const std::string& w : parsed.words) gram.push_back(model.vocab_.add(w));
      level[gram] = {parsed.prob, parsed.bow};
      ++entries;
      ++i;
    }
    if (entries != declared[static_cast<size_t>(section) - 1]) {
      throw fail("section \\" + std::to_string(section) + "-grams: declared " +
                 std::to_string(declared[static_cast<size_t>(section) - 1]) + " entries, found " +
                 std::to_string(entries));
    }
    expected_order = section + 1;
  }
  throw fail("missing \\end\\");
}

void save_arpa(const NgramModel& model, const std::string& path) {
  std::string out = "\\data\\\n";
  for (int m = 1; m <= model.order_; ++m) {
    out += "ngram " + std::to_string(m) + "=" +
           std::to_string(model.levels_[static_cast<size_t>(m) - 1].size()) + "\n";
  }
  for (int m = 1; m <= model.order_; ++m) {
    out += "\n\\" + std::to_string(m) + "-grams:\n";
    const auto& level = model.levels_[static_cast<size_t>(m) - 1];
    std::vector<std::pair<std::string, const NgramModel::Node*>> rows;
    rows.reserve(level.size());
    for (const auto& [gram, node] : level) {
      std::string words;
      for (size_t j = 0; j < gram.size(); ++j) {
        if (j > 0) words.push_back(' ');
        words += model.vocab_.word(gram[j]);
      }
      rows.emplace_back(std::move(words), &node);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [words, node] : rows) {
      out += format_double(node->log10_prob);
      out += '\t';
      out += words;
      if (m < model.order_) {
        out += '\t';
        out += format_double(node->log10_bow);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  write_text_file(path, out);
}

}  // namespace mtconf
