// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/triggers.hpp"

#include <algorithm>
#include <cmath>

#include "mtconf/error.hpp"
#include "mtconf/textio.hpp"

namespace mtconf {

const char* to_string(TriggerMode mode) {
  return mode == TriggerMode::intra ? "intra" : "inter";
}

namespace {

// Unique ids of a sentence's tokens, tool words optionally dropped.
std::vector<int> presence_ids(const Sentence& sentence, Vocabulary& vocab,
                              const ToolWordSet& toolwords, bool exclude_toolwords) {
  std::vector<int> ids;
  ids.reserve(sentence.size());
  for (const std::string& w : sentence) {
    if (exclude_toolwords && toolwords.contains(w)) continue;
    ids.push_back(vocab.add(w));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

long CooccurrenceCounts::left_count(const std::string& x) const {
  auto id = left_.find(x);
  return id ? left_.frequency(*id) : 0;
}

long CooccurrenceCounts::right_count(const std::string& y) const {
  const Vocabulary& v = right_vocab();
  auto id = v.find(y);
  return id ? v.frequency(*id) : 0;
}

long CooccurrenceCounts::joint_count_ids(int x, int y) const {
  std::uint64_t key;
  if (mode_ == TriggerMode::intra) {
    if (x == y) return 0;
    key = pack(std::min(x, y), std::max(x, y));
  } else {
    key = pack(x, y);
  }
  auto it = joint_.find(key);
  return it == joint_.end() ? 0 : it->second;
}

long CooccurrenceCounts::joint_count(const std::string& x, const std::string& y) const {
  auto xid = left_.find(x);
  auto yid = right_vocab().find(y);
  if (!xid || !yid) return 0;
  return joint_count_ids(*xid, *yid);
}

double CooccurrenceCounts::mi_from_ids(int x, int y, const SmoothingParams& smoothing) const {
  double n = static_cast<double>(total_);
  double px = static_cast<double>(left_count_id(x)) / n;
  double py = static_cast<double>(right_count_id(y)) / n;
  double pxy = static_cast<double>(joint_count_ids(x, y) + smoothing.add_count) / n;
  if (smoothing.alpha > 0.0) {
    pxy = (pxy + smoothing.alpha * px * py) / (1.0 + smoothing.alpha);
  }
  if (pxy <= 0.0) return 0.0;  // 0 * log 0 convention
  return pxy * std::log2(pxy / (px * py));
}

void CooccurrenceCounts::merge(const CooccurrenceCounts& other) {
  if (mode_ != other.mode_) {
    throw Error(ErrorCategory::domain, "cannot merge counts of different modes");
  }
  total_ += other.total_;
  std::vector<int> left_map(static_cast<size_t>(other.left_.size()));
  for (int id = 0; id < other.left_.size(); ++id) {
    int nid = left_.add(other.left_.word(id));
    left_.add_frequency(nid, other.left_.frequency(id));
    left_map[static_cast<size_t>(id)] = nid;
  }
  std::vector<int> right_map;
  if (mode_ == TriggerMode::inter) {
    right_map.resize(static_cast<size_t>(other.right_.size()));
    for (int id = 0; id < other.right_.size(); ++id) {
      int nid = right_.add(other.right_.word(id));
      right_.add_frequency(nid, other.right_.frequency(id));
      right_map[static_cast<size_t>(id)] = nid;
    }
  }
  for (const auto& [key, count] : other.joint_) {
    int x = static_cast<int>(key >> 32);
    int y = static_cast<int>(key & 0xFFFFFFFFu);
    int nx = left_map[static_cast<size_t>(x)];
    int ny = mode_ == TriggerMode::intra ? left_map[static_cast<size_t>(y)]
                                         : right_map[static_cast<size_t>(y)];
    if (mode_ == TriggerMode::intra && nx > ny) std::swap(nx, ny);
    joint_[pack(nx, ny)] += count;
  }
}

CooccurrenceCounts count_cooccurrences(const Corpus& corpus, const ToolWordSet& toolwords,
                                       bool exclude_toolwords) {
  CooccurrenceCounts counts;
  counts.mode_ = TriggerMode::intra;
  for (const Sentence& sentence : corpus) {
    ++counts.total_;
    std::vector<int> ids = presence_ids(sentence, counts.left_, toolwords, exclude_toolwords);
    for (int id : ids) counts.left_.add_frequency(id, 1);
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t j = i + 1; j < ids.size(); ++j) {
        ++counts.joint_[CooccurrenceCounts::pack(ids[i], ids[j])];
      }
    }
  }
  return counts;
}

CooccurrenceCounts count_cooccurrences(const Bitext& bitext, const ToolWordSet& toolwords,
                                       bool exclude_toolwords) {
  CooccurrenceCounts counts;
  counts.mode_ = TriggerMode::inter;
  for (const auto& [src, tgt] : bitext.pairs) {
    ++counts.total_;
    std::vector<int> src_ids = presence_ids(src, counts.left_, toolwords, exclude_toolwords);
    std::vector<int> tgt_ids = presence_ids(tgt, counts.right_, toolwords, exclude_toolwords);
    for (int x : src_ids) counts.left_.add_frequency(x, 1);
    for (int y : tgt_ids) counts.right_.add_frequency(y, 1);
    for (int x : src_ids) {
      for (int y : tgt_ids) {
        ++counts.joint_[CooccurrenceCounts::pack(x, y)];
      }
    }
  }
  return counts;
}

namespace {

void check_smoothing(const SmoothingParams& smoothing) {
  if (smoothing.add_count < 0 || smoothing.alpha < 0.0) {
    throw Error(ErrorCategory::domain, "smoothing parameters must be non-negative");
  }
}

}  // namespace

double mutual_information(const CooccurrenceCounts& counts, const std::string& x,
                          const std::string& y, const SmoothingParams& smoothing) {
  check_smoothing(smoothing);
  if (counts.total() == 0) {
    throw Error(ErrorCategory::domain, "mutual information over empty counts");
  }
  auto xid = counts.left_vocab().find(x);
  if (!xid) throw Error(ErrorCategory::domain, "word '" + x + "' not in counted vocabulary");
  auto yid = counts.right_vocab().find(y);
  if (!yid) throw Error(ErrorCategory::domain, "word '" + y + "' not in counted vocabulary");
  return counts.mi_from_ids(*xid, *yid, smoothing);
}

void TriggerList::add(const std::string& x, std::vector<TriggerEntry> entries) {
  auto& map = index_[x];
  for (const TriggerEntry& e : entries) map[e.word] = e.mi;
  auto& list = entries_[x];
  list.insert(list.end(), std::make_move_iterator(entries.begin()),
              std::make_move_iterator(entries.end()));
}

double TriggerList::value(const std::string& x, const std::string& y) const {
  auto it = index_.find(x);
  if (it == index_.end()) return 0.0;
  auto jt = it->second.find(y);
  return jt == it->second.end() ? 0.0 : jt->second;
}

const std::vector<TriggerEntry>* TriggerList::entries(const std::string& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> TriggerList::trigger_words_sorted() const {
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (const auto& [word, list] : entries_) words.push_back(word);
  std::sort(words.begin(), words.end());
  return words;
}

size_t TriggerList::entry_count() const {
  size_t n = 0;
  for (const auto& [word, list] : entries_) n += list.size();
  return n;
}

void TriggerList::rebuild_index() {
  index_.clear();
  for (const auto& [x, list] : entries_) {
    auto& map = index_[x];
    for (const TriggerEntry& e : list) map[e.word] = e.mi;
  }
}

TriggerList build_trigger_list(const CooccurrenceCounts& counts, const SmoothingParams& smoothing,
                               long top_k) {
  check_smoothing(smoothing);
  if (top_k < 1) throw Error(ErrorCategory::domain, "top-k must be at least 1");
  if (counts.total() == 0) throw Error(ErrorCategory::domain, "trigger list over empty counts");

  const Vocabulary& left = counts.left_vocab();
  const Vocabulary& right = counts.right_vocab();
  const bool intra = counts.mode() == TriggerMode::intra;

  // With no additive count, pairs that never co-occur have MI <= 0 and can be
  // skipped; candidates are then only the observed joints.
  std::vector<std::vector<int>> observed;
  if (smoothing.add_count == 0) {
    observed.assign(static_cast<size_t>(left.size()), {});
    for (const auto& [key, count] : counts.joint()) {
      int x = static_cast<int>(key >> 32);
      int y = static_cast<int>(key & 0xFFFFFFFFu);
      observed[static_cast<size_t>(x)].push_back(y);
      if (intra) observed[static_cast<size_t>(y)].push_back(x);
    }
  }

  TriggerList list(counts.mode(), false);
  std::vector<TriggerEntry> scored;
  for (int x = 0; x < left.size(); ++x) {
    scored.clear();
    auto consider = [&](int y) {
      if (intra && y == x) return;
      double mi = counts.mi_from_ids(x, y, smoothing);
      if (mi > 0.0) scored.push_back({right.word(y), mi});
    };
    if (smoothing.add_count == 0) {
      for (int y : observed[static_cast<size_t>(x)]) consider(y);
    } else {
      for (int y = 0; y < right.size(); ++y) consider(y);
    }
    std::sort(scored.begin(), scored.end(), [](const TriggerEntry& a, const TriggerEntry& b) {
      if (a.mi != b.mi) return a.mi > b.mi;
      return a.word < b.word;
    });
    if (static_cast<long>(scored.size()) > top_k) scored.resize(static_cast<size_t>(top_k));
    if (!scored.empty()) list.add(left.word(x), scored);
  }
  return list;
}

TriggerList normalize_trigger_list(TriggerList list) {
  for (auto& [x, entries] : list.mutable_entries()) {
    double max_mi = 0.0;
    for (const TriggerEntry& e : entries) max_mi = std::max(max_mi, e.mi);
    if (max_mi <= 0.0) {
      throw Error(ErrorCategory::domain, "trigger list for '" + x + "' has no positive MI");
    }
    for (TriggerEntry& e : entries) e.mi /= max_mi;
  }
  list.set_normalized(true);
  list.rebuild_index();
  return list;
}

void save_trigger_list(const TriggerList& list, const std::string& path) {
  std::string out = "#mode=";
  out += to_string(list.mode());
  out += " normalized=";
  out += list.normalized() ? '1' : '0';
  out += '\n';
  for (const std::string& x : list.trigger_words_sorted()) {
    for (const TriggerEntry& e : *list.entries(x)) {
      out += x;
      out += '\t';
      out += e.word;
      out += '\t';
      out += format_double_exact(e.mi);
      out += '\n';
    }
  }
  write_text_file(path, out);
}

TriggerList load_trigger_list(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_text_file(path));
  if (lines.empty()) {
    throw Error(ErrorCategory::format, "'" + path + "': missing trigger-list header");
  }
  TriggerMode mode;
  bool normalized;
  const std::string& header = lines[0];
  if (header == "#mode=intra normalized=0") {
    mode = TriggerMode::intra;
    normalized = false;
  } else if (header == "#mode=intra normalized=1") {
    mode = TriggerMode::intra;
    normalized = true;
  } else if (header == "#mode=inter normalized=0") {
    mode = TriggerMode::inter;
    normalized = false;
  } else if (header == "#mode=inter normalized=1") {
    mode = TriggerMode::inter;
    normalized = true;
  } else {
    throw Error(ErrorCategory::format, "'" + path + "' line 1: bad header '" + header + "'");
  }

  TriggerList list(mode, normalized);
  std::string current_x;
  std::vector<TriggerEntry> current;
  auto flush = [&]() {
    if (!current.empty()) list.add(current_x, std::move(current));
    current = {};
  };
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    size_t t3 = t2 == std::string::npos ? std::string::npos : line.find('\t', t2 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos || t3 != std::string::npos) {
      throw Error(ErrorCategory::format,
                  "'" + path + "' line " + std::to_string(i + 1) + ": expected 3 tab-separated columns");
    }
    std::string x = line.substr(0, t1);
    std::string y = line.substr(t1 + 1, t2 - t1 - 1);
    double mi;
    if (x.empty() || y.empty() || !parse_double(line.substr(t2 + 1), mi)) {
      throw Error(ErrorCategory::format,
                  "'" + path + "' line " + std::to_string(i + 1) + ": malformed trigger entry");
    }
    if (x != current_x) {
      flush();
      current_x = x;
    } else if (!current.empty() && mi > current.back().mi) {
      throw Error(ErrorCategory::format, "'" + path + "' line " + std::to_string(i + 1) +
                                             ": MI not in descending order within group '" + x + "'");
    }
    current.push_back({std::move(y), mi});
  }
  flush();
  return list;
}

}  // namespace mtconf
