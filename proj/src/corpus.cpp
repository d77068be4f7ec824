// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/corpus.hpp"

#include <algorithm>
#include <string>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

int Vocabulary::add(const std::string& word) {
  auto it = ids_.find(word);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(words_.size());
  ids_.emplace(word, id);
  words_.push_back(word);
  freq_.push_back(0);
  return id;
}

std::optional<int> Vocabulary::find(const std::string& word) const {
  auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Corpus load_monolingual(const std::string& path, bool skip_empty) {
  std::string text = read_text_file(path);
  Corpus corpus;
  size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    Sentence tokens = split_tokens(line);
    if (tokens.empty()) {
      if (skip_empty) continue;
      throw Error(ErrorCategory::format,
                  "'" + path + "' line " + std::to_string(line_no) + " is empty");
    }
    corpus.push_back(std::move(tokens));
  }
  return corpus;
}

void save_monolingual(const Corpus& corpus, const std::string& path) {
  std::string out;
  for (const Sentence& sentence : corpus) {
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += sentence[i];
    }
    out.push_back('\n');
  }
  write_text_file(path, out);
}

Bitext load_bitext(const std::string& src_path, const std::string& tgt_path) {
  Corpus src = load_monolingual(src_path, false);
  Corpus tgt = load_monolingual(tgt_path, false);
  if (src.size() != tgt.size()) {
    throw Error(ErrorCategory::alignment,
                "line count mismatch: '" + src_path + "' has " + std::to_string(src.size()) +
                    " lines, '" + tgt_path + "' has " + std::to_string(tgt.size()));
  }
  Bitext bitext;
  bitext.pairs.reserve(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    bitext.pairs.emplace_back(std::move(src[i]), std::move(tgt[i]));
  }
  return bitext;
}

Vocabulary build_vocabulary(const Corpus& corpus, long min_sentence_freq) {
  // First pass: sentence-presence counts in first-seen order.
  Vocabulary seen;
  for (const Sentence& sentence : corpus) {
    std::vector<int> ids;
    ids.reserve(sentence.size());
    for (const std::string& w : sentence) ids.push_back(seen.add(w));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) seen.add_frequency(id, 1);
  }
  // Second pass: keep qualifying words, re-assigning dense ids.
  Vocabulary vocab;
  for (int id = 0; id < seen.size(); ++id) {
    if (seen.frequency(id) >= min_sentence_freq) {
      int nid = vocab.add(seen.word(id));
      vocab.add_frequency(nid, seen.frequency(id));
    }
  }
  return vocab;
}

ToolWordSet load_toolwords(const std::string& path) {
  std::string text = read_text_file(path);
  ToolWordSet set;
  for (const std::string& line : split_lines(text)) {
    for (std::string& token : split_tokens(line)) set.insert(std::move(token));
  }
  return set;
}

}  // namespace mtconf
