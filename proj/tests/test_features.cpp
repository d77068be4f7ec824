// Apache License, Version 2.0, refer to LICENSE.txt
#include "mtconf/features.hpp"

#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "mtconf/error.hpp"
#include "testutil.hpp"

using namespace mtconf;
using testutil::TempDir;

namespace {

// Exhaustive lattice search with the same scoring and tie rule as the DP:
// paths enumerated in lexicographic alternative order, strict improvement.
std::vector<std::string> brute_best_path(const Sentence& sentence, const FeatureLexicon& lexicon,
                                         const NgramModel& model, double* best_lp = nullptr) {
  std::vector<std::vector<std::string>> alts;
  for (const auto& w : sentence) {
    std::vector<std::string> tags;
    for (const FeatureTag& t : lexicon.lookup(w)) tags.push_back(t.canonical());
    alts.push_back(tags);
  }
  std::vector<size_t> combo(sentence.size(), 0);
  std::vector<std::string> best;
  double best_score = 0.0;
  bool have_best = false;
  while (true) {
    std::vector<std::string> tags;
    double lp = 0.0;
    for (size_t i = 0; i < combo.size(); ++i) {
      const std::string& tag = alts[i][combo[i]];
      lp += model.log10_word_prob(tag, std::span(tags.data(), tags.size()));
      tags.push_back(tag);
    }
    if (!have_best || lp > best_score) {
      best_score = lp;
      best = tags;
      have_best = true;
    }
    size_t i = combo.size();
    while (i > 0) {
      --i;
      if (++combo[i] < alts[i].size()) break;
      combo[i] = 0;
      if (i == 0) {
        if (best_lp) *best_lp = best_score;
        return best;
      }
    }
    if (combo.size() == 0) break;
  }
  if (best_lp) *best_lp = best_score;
  return best;
}

double path_log_prob(const std::vector<std::string>& tags, const NgramModel& model) {
  double lp = 0.0;
  std::vector<std::string> prefix;
  for (const std::string& tag : tags) {
    lp += model.log10_word_prob(tag, prefix);
    prefix.push_back(tag);
  }
  return lp;
}

NgramModel toy_tag_model(TempDir& dir) {
  std::string path = dir.write("tags.arpa",
                               "\\data\\\n"
                               "ngram 1=4\n"
                               "ngram 2=2\n"
                               "\n"
                               "\\1-grams:\n"
                               "-0.8\tD,-,-\t-0.2\n"
                               "-0.9\tN,-,mS\t-0.1\n"
                               "-1.2\tV,pi,3S\t0\n"
                               "-2.0\t<unk>\t0\n"
                               "\n"
                               "\\2-grams:\n"
                               "-0.3\tD,-,- N,-,mS\n"
                               "-0.5\tN,-,mS V,pi,3S\n"
                               "\n"
                               "\\end\\\n");
  return load_arpa(path);
}

FeatureLexicon toy_lexicon() {
  FeatureLexicon lex;
  lex.add("le", FeatureTag::parse("D,-,-"));
  lex.add("chat", FeatureTag::parse("N,-,mS"));
  lex.add("dort", FeatureTag::parse("V,pi,3S"));
  lex.add("garde", FeatureTag::parse("V,pi,3S"));
  lex.add("garde", FeatureTag::parse("N,-,mS"));
  return lex;
}

}  // namespace

TEST_CASE("feature tags parse and render canonically") {
  FeatureTag t = FeatureTag::parse("V,ii,3S");
  CHECK(t.syntactic_class == "V");
  CHECK(t.tense == "ii");
  CHECK(t.agreement == "3S");
  CHECK(t.canonical() == "V,ii,3S");

  FeatureTag n = FeatureTag::parse("N,-,mP");
  CHECK(n.tense.empty());
  CHECK(n.agreement == "mP");
  CHECK(n.canonical() == "N,-,mP");

  CHECK(FeatureTag::unknown().canonical() == "UNK,-,-");

  CHECK_THROWS_AS(FeatureTag::parse("V,ii"), Error);
  CHECK_THROWS_AS(FeatureTag::parse("V,ii,3S,extra"), Error);
  CHECK_THROWS_AS(FeatureTag::parse("V,,3S"), Error);
}

TEST_CASE("lexicon lines accumulate readings in file order") {
  TempDir dir;
  std::string path = dir.write("lex.tsv",
                               "\xC3\xA9tait\tV,ii,3S\n"
                               "sommes\tV,pi,1P\n"
                               "sommes\tN,-,fP\n"
                               "sommes\tV,pi,1P\n");
  FeatureLexicon lex = load_lexicon(path);
  const auto& etait = lex.lookup("\xC3\xA9tait");
  REQUIRE(etait.size() == 1);
  CHECK(etait[0].canonical() == "V,ii,3S");

  const auto& sommes = lex.lookup("sommes");
  REQUIRE(sommes.size() == 2);  // duplicate collapsed
  CHECK(sommes[0].canonical() == "V,pi,1P");
  CHECK(sommes[1].canonical() == "N,-,fP");

  const auto& oov = lex.lookup("absent");
  REQUIRE(oov.size() == 1);
  CHECK(oov[0].canonical() == "UNK,-,-");
}

TEST_CASE("malformed lexicon lines name the line") {
  TempDir dir;
  try {
    load_lexicon(dir.write("bad.tsv", "ok\tV,ii,3S\nbroken\tV,ii\n"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::format);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_lexicon(dir.write("notab.tsv", "word-without-tab\n")), Error);
}

TEST_CASE("training-time tagging is seeded and uniform") {
  FeatureLexicon lex;
  lex.add("amb", FeatureTag::parse("T1,-,-"));
  lex.add("amb", FeatureTag::parse("T2,-,-"));
  lex.add("plain", FeatureTag::parse("P,-,-"));

  Corpus corpus{{"plain", "amb", "plain"}};
  Corpus a = tag_corpus_for_training(corpus, lex, 42);
  Corpus b = tag_corpus_for_training(corpus, lex, 42);
  CHECK(a == b);
  CHECK(a[0][0] == "P,-,-");
  CHECK(a[0][2] == "P,-,-");

  // Unambiguous sentences are seed-independent.
  Corpus plain{{"plain", "plain"}};
  CHECK(tag_corpus_for_training(plain, lex, 1) == tag_corpus_for_training(plain, lex, 2));

  // Uniform choice over 2 readings: frequency 0.5 +- 0.05 over 2000 draws.
  Corpus many(2000, Sentence{"amb"});
  Corpus tagged = tag_corpus_for_training(many, lex, 7);
  long t1 = 0;
  for (const Sentence& s : tagged) {
    if (s[0] == "T1,-,-") ++t1;
  }
  double ratio = static_cast<double>(t1) / 2000.0;
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.55);
}

TEST_CASE("disambiguation forces unambiguous sentences") {
  TempDir dir;
  NgramModel model = toy_tag_model(dir);
  FeatureLexicon lex = toy_lexicon();
  std::vector<std::string> tags = disambiguate({"le", "chat", "dort"}, lex, model);
  CHECK(tags == std::vector<std::string>{"D,-,-", "N,-,mS", "V,pi,3S"});
}

TEST_CASE("a two-way ambiguity resolves to the higher-probability path") {
  TempDir dir;
  NgramModel model = toy_tag_model(dir);
  FeatureLexicon lex = toy_lexicon();
  Sentence sentence{"le", "garde"};
  std::vector<std::string> tags = disambiguate(sentence, lex, model);
  // Verified against full enumeration: the noun reading scores -1.1 vs -2.2.
  CHECK(tags == std::vector<std::string>{"D,-,-", "N,-,mS"});
  CHECK(tags == brute_best_path(sentence, lex, model));
}

TEST_CASE("equal-probability readings prefer lexicon order") {
  TempDir dir;
  std::string path = dir.write("flat.arpa",
                               "\\data\\\n"
                               "ngram 1=3\n"
                               "\n"
                               "\\1-grams:\n"
                               "-1\tT1,-,-\n"
                               "-1\tT2,-,-\n"
                               "-2\t<unk>\n"
                               "\n"
                               "\\end\\\n");
  NgramModel model = load_arpa(path);
  FeatureLexicon lex;
  lex.add("tie", FeatureTag::parse("T2,-,-"));  // listed first
  lex.add("tie", FeatureTag::parse("T1,-,-"));
  std::vector<std::string> tags = disambiguate({"tie", "tie"}, lex, model);
  CHECK(tags == std::vector<std::string>{"T2,-,-", "T2,-,-"});
}

TEST_CASE("DP equals brute force on random lattices") {
  std::mt19937_64 rng(6060);
  // Tag alphabet and a random tag corpus to train on.
  std::vector<std::string> alphabet;
  for (int i = 0; i < 5; ++i) alphabet.push_back("T" + std::to_string(i) + ",-,-");
  Corpus tag_corpus;
  for (int s = 0; s < 60; ++s) {
    Sentence sent;
    size_t len = 1 + rng() % 7;
    for (size_t i = 0; i < len; ++i) sent.push_back(alphabet[rng() % alphabet.size()]);
    tag_corpus.push_back(sent);
  }
  LmTrainOptions opt;
  opt.order = 3;
  opt.smoothing = LmSmoothing::witten_bell;
  NgramModel model = train_ngram(tag_corpus, opt);

  for (int round = 0; round < 40; ++round) {
    FeatureLexicon lex;
    size_t vocab = 1 + rng() % 6;
    std::vector<std::string> words;
    for (size_t w = 0; w < vocab; ++w) {
      std::string word = "w" + std::to_string(w);
      words.push_back(word);
      size_t n_tags = 1 + rng() % 3;
      for (size_t t = 0; t < n_tags; ++t) {
        lex.add(word, FeatureTag::parse(alphabet[rng() % alphabet.size()]));
      }
    }
    Sentence sentence;
    size_t len = 1 + rng() % 6;
    for (size_t i = 0; i < len; ++i) sentence.push_back(words[rng() % words.size()]);

    double brute_lp = 0.0;
    std::vector<std::string> want = brute_best_path(sentence, lex, model, &brute_lp);
    std::vector<std::string> got = disambiguate(sentence, lex, model);
    CHECK(got == want);
    // DP output probability dominates every enumerated path.
    CHECK(path_log_prob(got, model) == doctest::Approx(brute_lp).epsilon(1e-12));
  }
}

TEST_CASE("feature confidence scores the disambiguated sequence") {
  TempDir dir;
  NgramModel model = toy_tag_model(dir);
  FeatureLexicon lex = toy_lexicon();

  ScoreVector scores = feature_confidence({"le", "chat", "dort"}, lex, model);
  REQUIRE(scores.size() == 3);
  // Hand-evaluated backoff queries along D,-,- N,-,mS V,pi,3S.
  CHECK(scores.values[0] == doctest::Approx(std::pow(10.0, -0.8)).epsilon(1e-12));
  CHECK(scores.values[1] == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-12));
  CHECK(scores.values[2] == doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));

  // All-OOV sentences degenerate to UNK-tag queries.
  ScoreVector oov = feature_confidence({"xx", "yy"}, lex, model);
  CHECK(oov.values[0] == doctest::Approx(std::pow(10.0, -2.0)).epsilon(1e-12));
  CHECK(oov.values[1] == doctest::Approx(std::pow(10.0, -2.0)).epsilon(1e-12));

  // Alignment: one score per token, always.
  for (size_t len = 1; len <= 5; ++len) {
    Sentence s(len, "garde");
    CHECK(feature_confidence(s, lex, model).size() == len);
  }
}
