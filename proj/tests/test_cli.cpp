// Apache License, Version 2.0, refer to LICENSE.txt
#include <algorithm>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "mtconf/textio.hpp"
#include "subprocess.hpp"
#include "testutil.hpp"

using testutil::CmdResult;
using testutil::run_command;
using testutil::TempDir;

namespace {

const std::string kCli = MTCONF_CLI_PATH;
const std::string kData = MTCONF_DATA_DIR;

bool exists(const std::string& path) { return std::filesystem::exists(path); }

}  // namespace

TEST_CASE("build-triggers writes the trigger list and its sidecar") {
  TempDir dir;
  std::string out = dir.file("trig.tsv");
  CmdResult r = run_command(kCli + " build-triggers --mode intra --corpus " + kData +
                                "/train.fr --top-k 10 --out " + out,
                            dir.path);
  CHECK(r.status == 0);
  REQUIRE(exists(out));
  REQUIRE(exists(out + ".config"));
  std::string contents = mtconf::read_text_file(out);
  CHECK(contents.rfind("#mode=intra normalized=0\n", 0) == 0);
  std::string sidecar = mtconf::read_text_file(out + ".config");
  CHECK(sidecar.find("command=build-triggers\n") != std::string::npos);
  CHECK(sidecar.find("top_k=10\n") != std::string::npos);

  // Re-running is byte-identical.
  std::string out2 = dir.file("trig2.tsv");
  run_command(kCli + " build-triggers --mode intra --corpus " + kData +
                  "/train.fr --top-k 10 --out " + out2,
              dir.path);
  CHECK(mtconf::read_text_file(out) == mtconf::read_text_file(out2));
}

TEST_CASE("inter mode without --src is a usage error") {
  TempDir dir;
  CmdResult r = run_command(kCli + " build-triggers --mode inter --tgt " + kData +
                                "/train.fr --out " + dir.file("x.tsv"),
                            dir.path);
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: usage:", 0) == 0);
  CHECK(r.err.find("--src") != std::string::npos);
}

TEST_CASE("unknown measures list the valid ones") {
  TempDir dir;
  CmdResult r = run_command(kCli + " score --measure bogus --hyp " + kData +
                                "/hyp.fr --out " + dir.file("s.tsv"),
                            dir.path);
  CHECK(r.status == 2);
  CHECK(r.err.find("intra-mi") != std::string::npos);
  CHECK(r.err.find("inter-mi") != std::string::npos);
  CHECK(r.err.find("ngram") != std::string::npos);
  CHECK(r.err.find("feature") != std::string::npos);
}

TEST_CASE("seeded fusion is reproducible") {
  TempDir dir;
  std::string lm = dir.file("lm.arpa");
  REQUIRE(run_command(kCli + " train-lm --corpus " + kData + "/train.fr --order 3 --out " + lm,
                      dir.path)
              .status == 0);
  std::string scores = dir.file("ngram.scores");
  REQUIRE(run_command(kCli + " score --measure ngram --hyp " + kData + "/hyp.fr --lm " + lm +
                          " --out " + scores,
                      dir.path)
              .status == 0);
  std::string w1 = dir.file("w1.tsv"), w2 = dir.file("w2.tsv");
  CmdResult a = run_command(kCli + " fuse --scores " + scores + " --labels " + kData +
                                "/hyp.lab --seed 7 --out " + w1,
                            dir.path);
  CmdResult b = run_command(kCli + " fuse --scores " + scores + " --labels " + kData +
                                "/hyp.lab --seed 7 --out " + w2,
                            dir.path);
  CHECK(a.status == 0);
  CHECK(b.status == 0);
  CHECK(mtconf::read_text_file(w1) == mtconf::read_text_file(w2));
}

TEST_CASE("evaluate reports alignment errors with the sentence index") {
  TempDir dir;
  std::string lm = dir.file("lm.arpa");
  run_command(kCli + " train-lm --corpus " + kData + "/train.fr --order 2 --out " + lm, dir.path);
  std::string scores = dir.file("s.tsv");
  run_command(kCli + " score --measure ngram --hyp " + kData + "/hyp.fr --lm " + lm + " --out " +
                  scores,
              dir.path);
  // Labels with a wrong count in sentence 1.
  std::string bad = dir.write("bad.lab",
                              "1 1 1\n1 1 1 1 1 1 1\n1 1 0 1 1 1\n1 1 1 1 1 0 1\n"
                              "1 1 1 1 1 1 1\n1 1 1 1 1 0 1\n1 1 1 1 1 1 1 1\n"
                              "1 1 1 0 1 1 1\n1 1 1 1 1 1 1\n1 1 1 1 0 1 1 1\n");
  CmdResult r = run_command(kCli + " evaluate --scores " + scores + " --labels " + bad +
                                " --report " + dir.file("rep.tsv"),
                            dir.path);
  CHECK(r.status == 5);
  CHECK(r.err.rfind("error: alignment:", 0) == 0);
  CHECK(r.err.find("sentence 1") != std::string::npos);
}

TEST_CASE("a wide window scores like constant weighting on short sentences") {
  TempDir dir;
  // Hypotheses of at most 5 words: every |i-j| is at most 4.
  std::string hyp = dir.write("hyp.txt",
                              "le conseil soutient la politique\n"
                              "la commission propose une r\xC3\xA9"
                              "forme\n");
  std::string src = dir.write("src.txt",
                              "the council supports the policy\n"
                              "the commission proposes a reform\n");
  std::string trig = dir.file("inter.trig");
  REQUIRE(run_command(kCli + " build-triggers --mode inter --src " + kData + "/train.en --tgt " +
                          kData + "/train.fr --top-k 30 --out " + trig,
                      dir.path)
              .status == 0);
  std::string windowed = dir.file("win.scores"), constant = dir.file("const.scores");
  REQUIRE(run_command(kCli + " score --measure inter-mi --hyp " + hyp + " --src " + src +
                          " --triggers " + trig + " --weight window --window 4 --out " + windowed,
                      dir.path)
              .status == 0);
  REQUIRE(run_command(kCli + " score --measure inter-mi --hyp " + hyp + " --src " + src +
                          " --triggers " + trig + " --weight constant --out " + constant,
                      dir.path)
              .status == 0);
  CHECK(mtconf::read_text_file(windowed) == mtconf::read_text_file(constant));
}

TEST_CASE("sweep emits raw points without summary lines") {
  TempDir dir;
  std::string lm = dir.file("lm.arpa");
  run_command(kCli + " train-lm --corpus " + kData + "/train.fr --order 2 --out " + lm, dir.path);
  std::string scores = dir.file("s.tsv");
  run_command(kCli + " score --measure ngram --hyp " + kData + "/hyp.fr --lm " + lm + " --out " +
                  scores,
              dir.path);
  std::string report = dir.file("points.tsv");
  CmdResult r = run_command(kCli + " sweep --scores " + scores + " --labels " + kData +
                                "/hyp.lab --steps 40 --report " + report,
                            dir.path);
  CHECK(r.status == 0);
  std::string contents = mtconf::read_text_file(report);
  CHECK(contents.rfind("threshold\tCAR\tCRR\tCER\tF\n", 0) == 0);
  CHECK(contents.find("# best-F") == std::string::npos);
  REQUIRE(exists(report + ".config"));
}

TEST_CASE("tag writes a seeded tag corpus the LM trainer consumes") {
  TempDir dir;
  std::string t1 = dir.file("t1.txt"), t2 = dir.file("t2.txt");
  std::string base = kCli + " tag --corpus " + kData + "/train.fr --lexicon " + kData +
                     "/lexicon.fr.tsv";
  REQUIRE(run_command(base + " --seed 5 --out " + t1, dir.path).status == 0);
  REQUIRE(run_command(base + " --seed 5 --out " + t2, dir.path).status == 0);
  std::string tags = mtconf::read_text_file(t1);
  CHECK(tags == mtconf::read_text_file(t2));

  // One tag per input token, each in canonical CLASS,TENSE,AGR shape.
  mtconf::Corpus words = mtconf::load_monolingual(kData + "/train.fr", false);
  mtconf::Corpus tagged = mtconf::load_monolingual(t1, false);
  REQUIRE(tagged.size() == words.size());
  for (size_t s = 0; s < tagged.size(); ++s) {
    REQUIRE(tagged[s].size() == words[s].size());
    for (const std::string& tag : tagged[s]) {
      CHECK(std::count(tag.begin(), tag.end(), ',') == 2);
    }
  }

  CmdResult lm = run_command(
      kCli + " train-lm --corpus " + t1 + " --order 3 --out " + dir.file("tags.arpa"), dir.path);
  CHECK(lm.status == 0);
}

TEST_CASE("missing input files exit with the io category") {
  TempDir dir;
  CmdResult r = run_command(kCli + " train-lm --corpus " + dir.file("nope.txt") + " --out " +
                                dir.file("x.arpa"),
                            dir.path);
  CHECK(r.status == 3);
  CHECK(r.err.rfind("error: io:", 0) == 0);
}
