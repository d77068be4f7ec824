// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/corpus.hpp"

#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "mtconf/error.hpp"
#include "testutil.hpp"

using namespace mtconf;
using testutil::TempDir;

TEST_CASE("load_monolingual parses whitespace-tokenized lines") {
  TempDir dir;
  Corpus c = load_monolingual(dir.write("a.txt", "a b\nc\n"), false);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == Sentence{"a", "b"});
  CHECK(c[1] == Sentence{"c"});
}

TEST_CASE("load_monolingual collapses whitespace runs") {
  TempDir dir;
  Corpus c = load_monolingual(dir.write("a.txt", "a  b\n"), false);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Sentence{"a", "b"});
}

TEST_CASE("load_monolingual handles empty lines per the skip flag") {
  TempDir dir;
  std::string path = dir.write("a.txt", "x\n\ny\n");
  Corpus skipped = load_monolingual(path, true);
  REQUIRE(skipped.size() == 2);
  CHECK(skipped[0] == Sentence{"x"});
  CHECK(skipped[1] == Sentence{"y"});
  CHECK_THROWS_AS(load_monolingual(path, false), Error);
}

TEST_CASE("load_monolingual accepts a missing trailing newline") {
  TempDir dir;
  Corpus c = load_monolingual(dir.write("a.txt", "a b"), false);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Sentence{"a", "b"});
}

TEST_CASE("load_monolingual rejects unreadable files and invalid UTF-8") {
  TempDir dir;
  try {
    load_monolingual(dir.file("missing.txt"), false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::io);
  }
  std::string bad = "caf\xE9 au lait\n";  // latin-1 e-acute
  try {
    load_monolingual(dir.write("bad.txt", bad), false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::format);
  }
  // The same bytes in UTF-8 are fine.
  Corpus c = load_monolingual(dir.write("good.txt", "caf\xC3\xA9 au lait\n"), false);
  CHECK(c[0][0] == "caf\xC3\xA9");
}

TEST_CASE("load_bitext pairs lines and reports count mismatches") {
  TempDir dir;
  std::string src = dir.write("s.txt", "a\nb\n");
  std::string tgt = dir.write("t.txt", "x\ny\n");
  Bitext bt = load_bitext(src, tgt);
  REQUIRE(bt.size() == 2);
  CHECK(bt.pairs[0].first == Sentence{"a"});
  CHECK(bt.pairs[0].second == Sentence{"x"});
  CHECK(bt.pairs[1].first == Sentence{"b"});
  CHECK(bt.pairs[1].second == Sentence{"y"});

  std::string tgt3 = dir.write("t3.txt", "x\ny\nz\n");
  try {
    load_bitext(src, tgt3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::alignment);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("bitext pairs may have different lengths") {
  TempDir dir;
  Bitext bt = load_bitext(dir.write("s.txt", "a b\n"), dir.write("t.txt", "u v w\n"));
  REQUIRE(bt.size() == 1);
  CHECK(bt.pairs[0].first.size() == 2);
  CHECK(bt.pairs[0].second.size() == 3);
}

TEST_CASE("build_vocabulary counts sentence presence") {
  Corpus corpus{{"a", "a"}, {"a", "b"}};
  Vocabulary v1 = build_vocabulary(corpus, 1);
  REQUIRE(v1.size() == 2);
  CHECK(v1.frequency(*v1.find("a")) == 2);
  CHECK(v1.frequency(*v1.find("b")) == 1);

  Vocabulary v2 = build_vocabulary(corpus, 2);
  CHECK(v2.size() == 1);
  CHECK(v2.find("a").has_value());
  CHECK(!v2.find("b").has_value());

  Vocabulary v0 = build_vocabulary(Corpus{}, 1);
  CHECK(v0.size() == 0);
}

TEST_CASE("vocabulary ids are dense and round-trip") {
  std::mt19937_64 rng(7);
  Corpus corpus = testutil::random_corpus(rng, 30, 8, 15);
  Vocabulary v = build_vocabulary(corpus, 1);
  std::set<int> ids;
  for (int id = 0; id < v.size(); ++id) {
    ids.insert(id);
    CHECK(*v.find(v.word(id)) == id);
  }
  CHECK(static_cast<int>(ids.size()) == v.size());
}

TEST_CASE("build_vocabulary frequencies match a brute-force scan") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 20; ++round) {
    Corpus corpus = testutil::random_corpus(rng, 25, 10, 12);
    Vocabulary v = build_vocabulary(corpus, 1);
    std::map<std::string, long> brute;
    for (const Sentence& s : corpus) {
      std::set<std::string> uniq(s.begin(), s.end());
      for (const std::string& w : uniq) ++brute[w];
    }
    REQUIRE(static_cast<size_t>(v.size()) == brute.size());
    for (const auto& [word, freq] : brute) {
      REQUIRE(v.find(word).has_value());
      CHECK(v.frequency(*v.find(word)) == freq);
    }
  }
}

TEST_CASE("load_toolwords collapses duplicates") {
  TempDir dir;
  ToolWordSet s1 = load_toolwords(dir.write("t.txt", "the\nof\n"));
  CHECK(s1.size() == 2);
  CHECK(s1.contains("the"));
  CHECK(s1.contains("of"));
  CHECK(!s1.contains("dog"));

  ToolWordSet s2 = load_toolwords(dir.write("d.txt", "the\nthe\n"));
  CHECK(s2.size() == 1);

  ToolWordSet s3 = load_toolwords(dir.write("e.txt", ""));
  CHECK(s3.size() == 0);
}

TEST_CASE("corpus round-trips through save and load") {
  std::mt19937_64 rng(99);
  TempDir dir;
  for (int round = 0; round < 10; ++round) {
    Corpus corpus = testutil::random_corpus(rng, 20, 8, 10);
    std::string path = dir.file("rt.txt");
    save_monolingual(corpus, path);
    CHECK(load_monolingual(path, false) == corpus);
  }
}
