// Apache License, Version 2.0, refer to LICENSE.txt
//
// mtconf: word-level confidence measures for machine translation output.
// Subcommands cover the whole pipeline: trigger building, LM and feature-LM
// training, scoring, perceptron fusion, and threshold-sweep evaluation.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mtconf/corpus.hpp"
#include "mtconf/error.hpp"
#include "mtconf/eval.hpp"
#include "mtconf/features.hpp"
#include "mtconf/fusion.hpp"
#include "mtconf/lm.hpp"
#include "mtconf/scorefile.hpp"
#include "mtconf/scoring.hpp"
#include "mtconf/textio.hpp"
#include "mtconf/triggers.hpp"

namespace {

using namespace mtconf;

std::string single_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\t') c = ' ';
  }
  return text;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return 2;
    case ErrorCategory::io: return 3;
    case ErrorCategory::format: return 4;
    case ErrorCategory::alignment: return 5;
    case ErrorCategory::domain: return 6;
  }
  return 1;
}

/// Every artifact gets a `<path>.config` sidecar: the full effective
/// configuration as flat key=value lines, enough to regenerate it.
void write_sidecar(const std::string& artifact, const std::string& command,
                   std::vector<std::pair<std::string, std::string>> kv) {
  std::sort(kv.begin(), kv.end());
  std::string out = "command=" + command + "\n";
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  write_text_file(artifact + ".config", out);
}

std::string flag(bool v) { return v ? "1" : "0"; }

// ---------------------------------------------------------------------------
// build-triggers

struct BuildTriggersArgs {
  std::string mode = "intra";
  std::string corpus, src, tgt, toolwords, out;
  bool exclude_toolwords = false;
  bool normalize = false;
  long smooth_c = 0;
  double smooth_alpha = 0.0;
  long top_k = 500;
  long min_freq = 1;
};

Corpus filter_corpus(const Corpus& corpus, long min_freq) {
  if (min_freq <= 1) return corpus;
  Vocabulary vocab = build_vocabulary(corpus, min_freq);
  Corpus filtered;
  filtered.reserve(corpus.size());
  for (const Sentence& s : corpus) {
    Sentence kept;
    for (const std::string& w : s) {
      if (vocab.find(w)) kept.push_back(w);
    }
    filtered.push_back(std::move(kept));
  }
  return filtered;
}

void run_build_triggers(const BuildTriggersArgs& args) {
  if (args.mode != "intra" && args.mode != "inter") {
    throw Error(ErrorCategory::usage, "--mode must be intra or inter");
  }
  ToolWordSet tools;
  if (!args.toolwords.empty()) tools = load_toolwords(args.toolwords);
  SmoothingParams smoothing{args.smooth_c, args.smooth_alpha};
  if (smoothing.add_count < 0 || smoothing.alpha < 0.0) {
    throw Error(ErrorCategory::usage, "smoothing parameters must be non-negative");
  }

  TriggerList list(TriggerMode::intra, false);
  if (args.mode == "intra") {
    if (args.corpus.empty()) {
      throw Error(ErrorCategory::usage, "--mode intra requires --corpus");
    }
    Corpus corpus = filter_corpus(load_monolingual(args.corpus, true), args.min_freq);
    list = build_trigger_list(count_cooccurrences(corpus, tools, args.exclude_toolwords),
                              smoothing, args.top_k);
  } else {
    if (args.src.empty() || args.tgt.empty()) {
      throw Error(ErrorCategory::usage, "--mode inter requires --src and --tgt");
    }
    Bitext bitext = load_bitext(args.src, args.tgt);
    if (args.min_freq > 1) {
      Corpus src_side, tgt_side;
      for (const auto& [s, t] : bitext.pairs) {
        src_side.push_back(s);
        tgt_side.push_back(t);
      }
      src_side = filter_corpus(src_side, args.min_freq);
      tgt_side = filter_corpus(tgt_side, args.min_freq);
      for (size_t i = 0; i < bitext.pairs.size(); ++i) {
        bitext.pairs[i] = {std::move(src_side[i]), std::move(tgt_side[i])};
      }
    }
    list = build_trigger_list(count_cooccurrences(bitext, tools, args.exclude_toolwords),
                              smoothing, args.top_k);
  }
  if (args.normalize) list = normalize_trigger_list(std::move(list));
  save_trigger_list(list, args.out);
  write_sidecar(args.out, "build-triggers",
                {{"mode", args.mode},
                 {"corpus", args.corpus},
                 {"src", args.src},
                 {"tgt", args.tgt},
                 {"toolwords", args.toolwords},
                 {"exclude_toolwords", flag(args.exclude_toolwords)},
                 {"normalize_triggers", flag(args.normalize)},
                 {"smooth_c", std::to_string(args.smooth_c)},
                 {"smooth_alpha", format_double(args.smooth_alpha)},
                 {"top_k", std::to_string(args.top_k)},
                 {"min_freq", std::to_string(args.min_freq)},
                 {"out", args.out}});
}

// ---------------------------------------------------------------------------
// train-lm / tag / train-feature-lm

struct TrainLmArgs {
  std::string corpus, lexicon, out;
  long order = 3;
  std::string smoothing = "witten-bell";
  double add_k = 1.0;
  long min_count = 1;
  std::uint64_t seed = 0;
};

LmTrainOptions lm_options(const TrainLmArgs& args) {
  LmTrainOptions opt;
  opt.order = static_cast<int>(args.order);
  if (args.smoothing == "witten-bell") {
    opt.smoothing = LmSmoothing::witten_bell;
  } else if (args.smoothing == "add-k") {
    opt.smoothing = LmSmoothing::add_k;
    opt.add_k = args.add_k;
  } else {
    throw Error(ErrorCategory::usage,
                "unknown LM smoothing '" + args.smoothing + "' (witten-bell, add-k)");
  }
  opt.min_word_count = args.min_count;
  return opt;
}

void run_train_lm(const TrainLmArgs& args) {
  Corpus corpus = load_monolingual(args.corpus, true);
  NgramModel model = train_ngram(corpus, lm_options(args));
  save_arpa(model, args.out);
  write_sidecar(args.out, "train-lm",
                {{"corpus", args.corpus},
                 {"order", std::to_string(args.order)},
                 {"lm_smoothing", args.smoothing},
                 {"add_k", format_double(args.add_k)},
                 {"min_count", std::to_string(args.min_count)},
                 {"out", args.out}});
}

void run_tag(const TrainLmArgs& args) {
  Corpus corpus = load_monolingual(args.corpus, true);
  FeatureLexicon lexicon = load_lexicon(args.lexicon);
  Corpus tagged = tag_corpus_for_training(corpus, lexicon, args.seed);
  save_monolingual(tagged, args.out);
  write_sidecar(args.out, "tag",
                {{"corpus", args.corpus},
                 {"lexicon", args.lexicon},
                 {"seed", std::to_string(args.seed)},
                 {"out", args.out}});
}

void run_train_feature_lm(const TrainLmArgs& args) {
  Corpus corpus = load_monolingual(args.corpus, true);
  FeatureLexicon lexicon = load_lexicon(args.lexicon);
  Corpus tagged = tag_corpus_for_training(corpus, lexicon, args.seed);
  NgramModel model = train_ngram(tagged, lm_options(args));
  save_arpa(model, args.out);
  write_sidecar(args.out, "train-feature-lm",
                {{"corpus", args.corpus},
                 {"lexicon", args.lexicon},
                 {"order", std::to_string(args.order)},
                 {"lm_smoothing", args.smoothing},
                 {"add_k", format_double(args.add_k)},
                 {"min_count", std::to_string(args.min_count)},
                 {"seed", std::to_string(args.seed)},
                 {"out", args.out}});
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string measure;
  std::string hyp, src, triggers, lm, lexicon, tag_lm, toolwords, out;
  std::string weight = "constant";
  double lambda = 1.0;
  long window = 4;
  std::string normalize = "none";
  bool exclude_toolwords = false;
  std::string preset;
};

WeightFn weight_fn(const ScoreArgs& args) {
  if (args.weight == "constant") return WeightFn::constant();
  if (args.weight == "exponential") return WeightFn::exponential(args.lambda);
  if (args.weight == "window") return WeightFn::window(args.window);
  throw Error(ErrorCategory::usage,
              "unknown weighting '" + args.weight + "' (constant, exponential, window)");
}

void apply_preset(ScoreArgs& args, const CLI::App* cmd) {
  if (args.preset.empty()) return;
  auto defaulted = [&](const std::string& name) { return cmd->count(name) == 0; };
  if (args.preset == "intra-best") {
    // Best reported intra-MI setting: tool words ignored, no normalization,
    // word positions not taken into account.
    if (defaulted("--exclude-toolwords")) args.exclude_toolwords = true;
    if (defaulted("--normalize")) args.normalize = "none";
    if (defaulted("--weight")) args.weight = "constant";
  } else if (args.preset == "inter-best") {
    // Best reported inter-MI setting: tool words excluded, no normalization,
    // centred triggering window of width 9 (halfwidth 4).
    if (defaulted("--exclude-toolwords")) args.exclude_toolwords = true;
    if (defaulted("--normalize")) args.normalize = "none";
    if (defaulted("--weight")) args.weight = "window";
    if (defaulted("--window")) args.window = 4;
  } else {
    throw Error(ErrorCategory::usage,
                "unknown preset '" + args.preset + "' (intra-best, inter-best)");
  }
}

void run_score(const ScoreArgs& args) {
  const std::vector<std::string> measures = {"intra-mi", "inter-mi", "ngram", "feature"};
  if (std::find(measures.begin(), measures.end(), args.measure) == measures.end()) {
    throw Error(ErrorCategory::usage, "unknown measure '" + args.measure +
                                          "' (valid: intra-mi, inter-mi, ngram, feature)");
  }
  // Hypotheses must stay line-aligned with sources and labels, so empty lines
  // are errors here rather than skipped.
  Corpus hyp = load_monolingual(args.hyp, false);
  ToolWordSet tools;
  if (!args.toolwords.empty()) tools = load_toolwords(args.toolwords);
  ScoreNorm norm = parse_score_norm(args.normalize);

  std::vector<ScoreVector> scores;
  scores.reserve(hyp.size());
  if (args.measure == "intra-mi") {
    if (args.triggers.empty()) {
      throw Error(ErrorCategory::usage, "--measure intra-mi requires --triggers");
    }
    TriggerList list = load_trigger_list(args.triggers);
    WeightFn w = weight_fn(args);
    for (const Sentence& s : hyp) {
      scores.push_back(intra_mi_confidence(s, list, w, tools, args.exclude_toolwords));
    }
  } else if (args.measure == "inter-mi") {
    if (args.triggers.empty() || args.src.empty()) {
      throw Error(ErrorCategory::usage, "--measure inter-mi requires --triggers and --src");
    }
    TriggerList list = load_trigger_list(args.triggers);
    Corpus src = load_monolingual(args.src, false);
    if (src.size() != hyp.size()) {
      throw Error(ErrorCategory::alignment,
                  "source has " + std::to_string(src.size()) + " sentences, hypothesis has " +
                      std::to_string(hyp.size()));
    }
    WeightFn w = weight_fn(args);
    for (size_t i = 0; i < hyp.size(); ++i) {
      scores.push_back(
          inter_mi_confidence(src[i], hyp[i], list, w, tools, args.exclude_toolwords));
    }
  } else if (args.measure == "ngram") {
    if (args.lm.empty()) throw Error(ErrorCategory::usage, "--measure ngram requires --lm");
    NgramModel model = load_arpa(args.lm);
    for (const Sentence& s : hyp) scores.push_back(ngram_confidence(s, model));
  } else {  // feature
    if (args.lexicon.empty() || args.tag_lm.empty()) {
      throw Error(ErrorCategory::usage, "--measure feature requires --lexicon and --tag-lm");
    }
    FeatureLexicon lexicon = load_lexicon(args.lexicon);
    NgramModel model = load_arpa(args.tag_lm);
    for (const Sentence& s : hyp) scores.push_back(feature_confidence(s, lexicon, model));
  }

  if (norm != ScoreNorm::none) {
    for (ScoreVector& s : scores) s = normalize_scores(s, norm);
  }
  save_scores(hyp, scores, args.out);
  write_sidecar(args.out, "score",
                {{"measure", args.measure},
                 {"hyp", args.hyp},
                 {"src", args.src},
                 {"triggers", args.triggers},
                 {"lm", args.lm},
                 {"lexicon", args.lexicon},
                 {"tag_lm", args.tag_lm},
                 {"toolwords", args.toolwords},
                 {"exclude_toolwords", flag(args.exclude_toolwords)},
                 {"weight", args.weight},
                 {"lambda", format_double(args.lambda)},
                 {"window", std::to_string(args.window)},
                 {"normalize", args.normalize},
                 {"preset", args.preset},
                 {"out", args.out}});
}

// ---------------------------------------------------------------------------
// fuse

struct FuseArgs {
  std::vector<std::string> score_files;
  std::string labels, names, out, combined_out;
  long epochs = 100;
  double rate = 0.1;
  std::uint64_t seed = 0;
  bool bare = false;
};

std::vector<std::string> measure_names(const FuseArgs& args) {
  std::vector<std::string> names;
  if (!args.names.empty()) {
    size_t start = 0;
    while (true) {
      size_t comma = args.names.find(',', start);
      if (comma == std::string::npos) {
        names.push_back(args.names.substr(start));
        break;
      }
      names.push_back(args.names.substr(start, comma - start));
      start = comma + 1;
    }
  } else {
    for (const std::string& path : args.score_files) {
      size_t slash = path.find_last_of('/');
      std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
      size_t dot = base.find_last_of('.');
      names.push_back(dot == std::string::npos ? base : base.substr(0, dot));
    }
  }
  if (names.size() != args.score_files.size()) {
    throw Error(ErrorCategory::usage, "--names must list one name per score file");
  }
  return names;
}

void run_fuse(const FuseArgs& args) {
  if (args.score_files.empty()) {
    throw Error(ErrorCategory::usage, "fuse requires at least one --scores file");
  }
  std::vector<ScoreFile> files;
  files.reserve(args.score_files.size());
  for (const std::string& path : args.score_files) files.push_back(load_scores(path));
  LabeledReference reference = load_labels(args.labels);
  if (reference.sentences.size() != files[0].sentence_count()) {
    throw Error(ErrorCategory::alignment,
                "labels have " + std::to_string(reference.sentences.size()) +
                    " sentences, scores have " + std::to_string(files[0].sentence_count()));
  }
  for (size_t s = 0; s < reference.sentences.size(); ++s) {
    if (reference.sentences[s].size() != files[0].words[s].size()) {
      throw Error(ErrorCategory::alignment,
                  "sentence " + std::to_string(s + 1) + ": " +
                      std::to_string(files[0].words[s].size()) + " hypothesis words vs " +
                      std::to_string(reference.sentences[s].size()) + " labels");
    }
  }

  FusionRows rows = assemble_rows(files);
  if (rows.rows.empty()) {
    throw Error(ErrorCategory::domain, "no word is scored by every measure; nothing to train on");
  }
  std::vector<int> labels = gather_labels(rows, reference);

  PerceptronOptions opt;
  opt.max_epochs = static_cast<int>(args.epochs);
  opt.rate = args.rate;
  opt.seed = args.seed;
  opt.averaged = !args.bare;
  WeightVector weights = train_perceptron(rows.rows, labels, opt);
  weights.measure_names = measure_names(args);
  if (weights.single_class) {
    std::cerr << "warning: training labels contain a single class\n";
  }
  save_weights(weights, args.out);

  std::vector<std::pair<std::string, std::string>> kv = {
      {"labels", args.labels},
      {"epochs", std::to_string(args.epochs)},
      {"rate", format_double(args.rate)},
      {"seed", std::to_string(args.seed)},
      {"averaged", flag(!args.bare)},
      {"out", args.out},
      {"combined_out", args.combined_out},
  };
  for (size_t i = 0; i < args.score_files.size(); ++i) {
    kv.emplace_back("scores_" + std::to_string(i), args.score_files[i]);
  }
  write_sidecar(args.out, "fuse", kv);
  std::cout << "fuse: epochs=" << weights.epochs_run
            << " training-error=" << format_double(weights.final_error) << "\n";

  if (!args.combined_out.empty()) {
    std::vector<ScoreVector> combined = combined_scores(files, weights);
    save_scores(files[0].words, combined, args.combined_out);
    write_sidecar(args.combined_out, "fuse", kv);
  }
}

// ---------------------------------------------------------------------------
// evaluate / sweep

struct EvaluateArgs {
  std::string scores, labels, report;
  std::string strategy = "quantile";
  long steps = 100;
  double lo = 0.0, hi = 1.0;
  std::string toolword_policy = "exclude";
  bool with_summary = true;  // sweep turns this off
};

void run_evaluate(const EvaluateArgs& args, const std::string& command) {
  ScoreFile file = load_scores(args.scores);
  LabeledReference reference = load_labels(args.labels);
  EvalDataset dataset = EvalDataset::zip(file.scores, reference);
  SweepStrategy strategy;
  if (args.strategy == "grid") {
    strategy = SweepStrategy::grid(args.lo, args.hi, static_cast<int>(args.steps));
  } else if (args.strategy == "quantile") {
    strategy = SweepStrategy::quantile(static_cast<int>(args.steps));
  } else {
    throw Error(ErrorCategory::usage,
                "unknown sweep strategy '" + args.strategy + "' (grid, quantile)");
  }
  ToolwordPolicy policy = parse_toolword_policy(args.toolword_policy);
  std::vector<RocPoint> points = roc_sweep(dataset, strategy, policy);

  auto describe = [](const RocPoint& p) {
    return "threshold=" + format_double(p.threshold) + " CAR=" + format_double(p.car) +
           " CRR=" + format_double(p.crr) + " CER=" + format_double(p.cer) +
           " F=" + format_double(p.f);
  };
  if (args.with_summary) {
    ReportSummary summary = emit_report(points, args.report);
    std::cout << "best-F: " << describe(summary.best_f) << "\n";
    std::cout << "min-CER: " << describe(summary.min_cer) << "\n";
  } else {
    std::string out = "threshold\tCAR\tCRR\tCER\tF\n";
    for (const RocPoint& p : points) {
      out += format_double(p.threshold) + '\t' + format_double(p.car) + '\t' +
             format_double(p.crr) + '\t' + format_double(p.cer) + '\t' + format_double(p.f) +
             '\n';
    }
    write_text_file(args.report, out);
  }
  write_sidecar(args.report, command,
                {{"scores", args.scores},
                 {"labels", args.labels},
                 {"strategy", args.strategy},
                 {"steps", std::to_string(args.steps)},
                 {"lo", format_double(args.lo)},
                 {"hi", format_double(args.hi)},
                 {"toolword_policy", args.toolword_policy},
                 {"report", args.report}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-level confidence measures for machine translation output"};
  app.require_subcommand(1);

  BuildTriggersArgs bt;
  CLI::App* cmd_bt =
      app.add_subcommand("build-triggers", "count co-occurrences and build a pruned trigger list");
  cmd_bt->add_option("--mode", bt.mode, "intra or inter")->capture_default_str();
  cmd_bt->add_option("--corpus", bt.corpus, "corpus file (intra mode)");
  cmd_bt->add_option("--src", bt.src, "source side (inter mode)");
  cmd_bt->add_option("--tgt", bt.tgt, "target side (inter mode)");
  cmd_bt->add_option("--toolwords", bt.toolwords, "tool-word list, one per line");
  cmd_bt->add_flag("--exclude-toolwords", bt.exclude_toolwords, "drop tool words from all counts");
  cmd_bt->add_option("--smooth-c", bt.smooth_c, "additive joint-count smoothing C")
      ->capture_default_str();
  cmd_bt->add_option("--smooth-alpha", bt.smooth_alpha, "interpolation smoothing alpha")
      ->capture_default_str();
  cmd_bt->add_option("--top-k", bt.top_k, "triggered words kept per word")->capture_default_str();
  cmd_bt->add_option("--min-freq", bt.min_freq, "minimum sentence frequency")
      ->capture_default_str();
  cmd_bt->add_flag("--normalize-triggers", bt.normalize, "scale each word's list to max MI 1");
  cmd_bt->add_option("--out", bt.out, "output trigger list")->required();

  TrainLmArgs tl;
  CLI::App* cmd_tl = app.add_subcommand("train-lm", "train a backoff n-gram model, ARPA output");
  cmd_tl->add_option("--corpus", tl.corpus)->required();
  cmd_tl->add_option("--order", tl.order)->capture_default_str();
  cmd_tl->add_option("--lm-smoothing", tl.smoothing, "witten-bell or add-k")
      ->capture_default_str();
  cmd_tl->add_option("--add-k", tl.add_k)->capture_default_str();
  cmd_tl->add_option("--min-count", tl.min_count, "token floor below which words become <unk>")
      ->capture_default_str();
  cmd_tl->add_option("--out", tl.out)->required();

  TrainLmArgs tg;
  CLI::App* cmd_tg = app.add_subcommand("tag", "replace words by seeded-random lexicon tags");
  cmd_tg->add_option("--corpus", tg.corpus)->required();
  cmd_tg->add_option("--lexicon", tg.lexicon)->required();
  cmd_tg->add_option("--seed", tg.seed)->capture_default_str();
  cmd_tg->add_option("--out", tg.out)->required();

  TrainLmArgs tf;
  CLI::App* cmd_tf =
      app.add_subcommand("train-feature-lm", "tag a corpus and train the tag n-gram model");
  cmd_tf->add_option("--corpus", tf.corpus)->required();
  cmd_tf->add_option("--lexicon", tf.lexicon)->required();
  cmd_tf->add_option("--order", tf.order)->capture_default_str();
  cmd_tf->add_option("--lm-smoothing", tf.smoothing)->capture_default_str();
  cmd_tf->add_option("--add-k", tf.add_k)->capture_default_str();
  cmd_tf->add_option("--min-count", tf.min_count)->capture_default_str();
  cmd_tf->add_option("--seed", tf.seed)->capture_default_str();
  cmd_tf->add_option("--out", tf.out)->required();

  ScoreArgs sc;
  CLI::App* cmd_sc = app.add_subcommand("score", "assign per-word confidence scores to hypotheses");
  cmd_sc->add_option("--measure", sc.measure, "intra-mi, inter-mi, ngram, feature")->required();
  cmd_sc->add_option("--hyp", sc.hyp, "hypothesis sentences")->required();
  cmd_sc->add_option("--src", sc.src, "aligned source sentences (inter-mi)");
  cmd_sc->add_option("--triggers", sc.triggers, "trigger list file");
  cmd_sc->add_option("--lm", sc.lm, "ARPA model (ngram)");
  cmd_sc->add_option("--lexicon", sc.lexicon, "feature lexicon TSV (feature)");
  cmd_sc->add_option("--tag-lm", sc.tag_lm, "ARPA model over tags (feature)");
  cmd_sc->add_option("--toolwords", sc.toolwords);
  cmd_sc->add_flag("--exclude-toolwords", sc.exclude_toolwords);
  cmd_sc->add_option("--weight", sc.weight, "constant, exponential, window")
      ->capture_default_str();
  cmd_sc->add_option("--lambda", sc.lambda, "exponential decay rate")->capture_default_str();
  cmd_sc->add_option("--window", sc.window, "window halfwidth (4 = centred width 9)")
      ->capture_default_str();
  cmd_sc->add_option("--normalize", sc.normalize, "none, l1, linf")->capture_default_str();
  cmd_sc->add_option("--preset", sc.preset, "intra-best or inter-best");
  cmd_sc->add_option("--out", sc.out)->required();

  FuseArgs fu;
  CLI::App* cmd_fu = app.add_subcommand("fuse", "train perceptron weights over measure scores");
  cmd_fu->add_option("--scores", fu.score_files, "aligned score files, one per measure")
      ->required();
  cmd_fu->add_option("--labels", fu.labels, "reference labels (1/0 per word)")->required();
  cmd_fu->add_option("--names", fu.names, "comma-separated measure names");
  cmd_fu->add_option("--epochs", fu.epochs)->capture_default_str();
  cmd_fu->add_option("--rate", fu.rate)->capture_default_str();
  cmd_fu->add_option("--seed", fu.seed)->capture_default_str();
  cmd_fu->add_flag("--bare", fu.bare, "return final weights instead of the average");
  cmd_fu->add_option("--out", fu.out, "weights file")->required();
  cmd_fu->add_option("--combined-out", fu.combined_out, "also write combined scores here");

  EvaluateArgs ev;
  CLI::App* cmd_ev = app.add_subcommand("evaluate", "sweep thresholds and report CER/CAR/CRR/F");
  cmd_ev->add_option("--scores", ev.scores)->required();
  cmd_ev->add_option("--labels", ev.labels)->required();
  cmd_ev->add_option("--strategy", ev.strategy, "grid or quantile")->capture_default_str();
  cmd_ev->add_option("--steps", ev.steps)->capture_default_str();
  cmd_ev->add_option("--lo", ev.lo, "grid lower bound")->capture_default_str();
  cmd_ev->add_option("--hi", ev.hi, "grid upper bound")->capture_default_str();
  cmd_ev->add_option("--toolword-policy", ev.toolword_policy, "exclude or count")
      ->capture_default_str();
  cmd_ev->add_option("--report", ev.report)->required();

  EvaluateArgs sw;
  CLI::App* cmd_sw = app.add_subcommand("sweep", "emit raw ROC sweep points without a summary");
  cmd_sw->add_option("--scores", sw.scores)->required();
  cmd_sw->add_option("--labels", sw.labels)->required();
  cmd_sw->add_option("--strategy", sw.strategy)->capture_default_str();
  cmd_sw->add_option("--steps", sw.steps)->capture_default_str();
  cmd_sw->add_option("--lo", sw.lo)->capture_default_str();
  cmd_sw->add_option("--hi", sw.hi)->capture_default_str();
  cmd_sw->add_option("--toolword-policy", sw.toolword_policy)->capture_default_str();
  cmd_sw->add_option("--report", sw.report, "output TSV")->required();

  try {
    app.parse(argc, argv);
    if (cmd_bt->parsed()) run_build_triggers(bt);
    if (cmd_tl->parsed()) run_train_lm(tl);
    if (cmd_tg->parsed()) run_tag(tg);
    if (cmd_tf->parsed()) run_train_feature_lm(tf);
    if (cmd_sc->parsed()) {
      apply_preset(sc, cmd_sc);
      run_score(sc);
    }
    if (cmd_fu->parsed()) run_fuse(fu);
    if (cmd_ev->parsed()) run_evaluate(ev, "evaluate");
    if (cmd_sw->parsed()) {
      sw.with_summary = false;
      run_evaluate(sw, "sweep");
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << single_line(e.what()) << "\n";
    return 2;
  } catch (const mtconf::Error& e) {
    std::cerr << "error: " << to_string(e.category()) << ": " << single_line(e.what()) << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << single_line(e.what()) << "\n";
    return 1;
  }
}
