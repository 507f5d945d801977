// Copyright 2026 The domt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace domt::cli {
namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Text = std::unique_ptr<domt_text, Deleter<domt_text, domt_text_free>>;
using Corpus = std::unique_ptr<domt_corpus, Deleter<domt_corpus, domt_corpus_free>>;
using Vocab = std::unique_ptr<domt_vocab, Deleter<domt_vocab, domt_vocab_free>>;
using Bpe = std::unique_ptr<domt_bpe, Deleter<domt_bpe, domt_bpe_free>>;
using Model =
    std::unique_ptr<domt_align_model, Deleter<domt_align_model, domt_align_free>>;
using Shortlist =
    std::unique_ptr<domt_shortlist, Deleter<domt_shortlist, domt_shortlist_free>>;
using NBest = std::unique_ptr<domt_nbest, Deleter<domt_nbest, domt_nbest_free>>;

void Check(domt_status status) {
  if (status != DOMT_OK) throw CommandError(ExitCodeFor(status), domt_last_error());
}

[[noreturn]] void Usage(const std::string& what) {
  throw CommandError(kExitUsage, what);
}

Text LoadText(const std::string& path) {
  domt_text* raw = nullptr;
  Check(domt_text_load(path.c_str(), &raw));
  return Text(raw);
}

Corpus LoadCorpus(const std::string& source, const std::string& target) {
  domt_corpus* raw = nullptr;
  Check(domt_corpus_load(source.c_str(), target.c_str(), &raw));
  return Corpus(raw);
}

Model LoadModel(const std::string& path) {
  domt_align_model* raw = nullptr;
  Check(domt_align_load(path.c_str(), &raw));
  return Model(raw);
}

Bpe LoadBpe(const std::string& path) {
  domt_bpe* raw = nullptr;
  Check(domt_bpe_load(path.c_str(), &raw));
  return Bpe(raw);
}

Vocab BuildVocab(const domt_text* text, std::uint64_t min_count) {
  domt_vocab* raw = nullptr;
  Check(domt_vocab_build(text, min_count, &raw));
  return Vocab(raw);
}

domt_metric ParseMetric(const std::string& name) {
  domt_metric metric;
  if (domt_metric_parse(name.c_str(), &metric) != DOMT_OK) {
    Usage("unknown metric '" + name + "' (expected sentbleu, chrf, ter or meteor)");
  }
  return metric;
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string Signed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.*f", digits, value);
  return buf;
}

// Splits "name=value"; both parts must be non-empty.
std::pair<std::string, std::string> SplitAssignment(const std::string& spec,
                                                    const char* flag) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    Usage(std::string(flag) + " expects NAME=VALUE, got '" + spec + "'");
  }
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

void TrainProgress(int iteration, double log_likelihood, double tension,
                   void* user_data) {
  auto& log = *static_cast<std::ostream*>(user_data);
  char buf[128];
  std::snprintf(buf, sizeof buf, "iteration %d\tlog-likelihood %.6f\ttension %.6f",
                iteration, log_likelihood, tension);
  log << buf << '\n';
}

}  // namespace

int ExitCodeFor(domt_status status) {
  switch (status) {
    case DOMT_OK:
      return kExitOk;
    case DOMT_ERR_INVALID_ARGUMENT:
    case DOMT_ERR_IO:
      return kExitUsage;
    default:
      return kExitComputation;
  }
}

void RunTrainAlign(const PipelineConfig::TrainAlign& cfg, std::ostream& log) {
  domt_train_config config;
  domt_train_config_init(&config);
  config.iterations = cfg.iterations;
  if (cfg.model == "ibm1") {
    config.model = DOMT_MODEL_IBM1;
  } else if (cfg.model == "diagonal") {
    config.model = DOMT_MODEL_DIAGONAL;
  } else {
    Usage("unknown model '" + cfg.model + "' (expected ibm1 or diagonal)");
  }
  config.null_prob = cfg.null_prob;
  config.tension_init = cfg.tension;
  config.learn_tension = cfg.learn_tension ? 1 : 0;
  config.tension_step = cfg.tension_step;
  config.smoothing_alpha = cfg.alpha;

  auto corpus = LoadCorpus(cfg.source, cfg.target);
  if (cfg.reverse) {
    domt_corpus* swapped = nullptr;
    Check(domt_corpus_swap(corpus.get(), &swapped));
    corpus.reset(swapped);
  }
  domt_align_model* raw = nullptr;
  Check(domt_align_train(corpus.get(), &config,
                         cfg.verbose ? TrainProgress : nullptr, &log, &raw));
  Model model(raw);
  Check(domt_align_save(model.get(), cfg.output.c_str()));
}

void RunAlign(const PipelineConfig::Align& cfg) {
  domt_unseen_policy unseen;
  if (cfg.unseen == "floor") {
    unseen = DOMT_UNSEEN_FLOOR;
  } else if (cfg.unseen == "error") {
    unseen = DOMT_UNSEEN_ERROR;
  } else {
    Usage("unknown unseen policy '" + cfg.unseen + "' (expected floor or error)");
  }
  auto model = LoadModel(cfg.model);
  auto corpus = LoadCorpus(cfg.source, cfg.target);
  Check(domt_align_write_alignments(model.get(), corpus.get(), unseen, cfg.floor,
                                    cfg.output.c_str()));
}

void RunBuildShortlist(const PipelineConfig::BuildShortlist& cfg) {
  if (cfg.output.empty() && cfg.export_path.empty()) {
    Usage("build-shortlist needs --output and/or --export");
  }
  domt_shortlist_options options;
  domt_shortlist_options_init(&options);
  options.k = cfg.k;
  options.frequent_f = cfg.frequent_f;
  if (cfg.direction == "s2t") {
    options.direction = DOMT_DIRECTION_S2T;
  } else if (cfg.direction == "t2s") {
    options.direction = DOMT_DIRECTION_T2S;
  } else {
    Usage("unknown direction '" + cfg.direction + "' (expected s2t or t2s)");
  }
  const char* const none[] = {nullptr};
  if (cfg.no_reserved) {
    options.reserved = none;
    options.reserved_count = 0;
  }

  Vocab counts;
  if (cfg.frequent_f > 0) {
    if (cfg.target_corpus.empty()) Usage("--frequent needs --target-corpus");
    auto text = LoadText(cfg.target_corpus);
    counts = BuildVocab(text.get(), 1);
  }
  auto model = LoadModel(cfg.model);
  domt_shortlist* raw = nullptr;
  Check(domt_shortlist_build(model.get(), counts.get(), &options, &raw));
  Shortlist shortlist(raw);
  if (!cfg.output.empty()) Check(domt_shortlist_save(shortlist.get(), cfg.output.c_str()));
  if (!cfg.export_path.empty()) {
    Check(domt_shortlist_export(shortlist.get(), cfg.export_path.c_str()));
  }
}

void RunCoverage(const PipelineConfig::Coverage& cfg, std::ostream& out) {
  domt_shortlist* raw = nullptr;
  Check(domt_shortlist_load(cfg.shortlist.c_str(), &raw));
  Shortlist shortlist(raw);
  auto corpus = LoadCorpus(cfg.source, cfg.target);
  std::vector<double> per_sentence(domt_corpus_size(corpus.get()));
  domt_coverage coverage;
  Check(domt_shortlist_coverage(shortlist.get(), corpus.get(), &coverage,
                                per_sentence.data(), per_sentence.size()));
  out << "k\treachable\ttotal\tcoverage\n"
      << domt_shortlist_k(shortlist.get()) << '\t' << coverage.reachable_tokens
      << '\t' << coverage.total_tokens << '\t' << Fixed(coverage.coverage, 6)
      << '\n';
  if (!cfg.per_sentence.empty()) {
    std::ofstream file(cfg.per_sentence, std::ios::binary);
    if (!file) throw CommandError(kExitUsage, "cannot write " + cfg.per_sentence);
    for (double c : per_sentence) file << Fixed(c, 6) << '\n';
    if (!file) throw CommandError(kExitUsage, "write error on " + cfg.per_sentence);
  }
}

void RunRerank(const PipelineConfig::Rerank& cfg) {
  const domt_metric metric = ParseMetric(cfg.metric);
  domt_nbest* raw = nullptr;
  Check(domt_nbest_load(cfg.nbest.c_str(), cfg.beam, &raw));
  NBest nbest(raw);
  domt_text* selected = nullptr;
  Check(domt_nbest_select(nbest.get(), metric, cfg.passthrough ? 1 : 0, &selected));
  Text text(selected);
  Check(domt_text_write(text.get(), cfg.output.c_str()));
  if (!cfg.annotated.empty()) {
    Check(domt_nbest_write_annotated(nbest.get(), metric, cfg.annotated.c_str()));
  }
}

void RunScore(const PipelineConfig::Score& cfg, std::ostream& out) {
  auto refs = LoadText(cfg.ref);
  auto score = [&](const std::string& path) {
    auto hyps = LoadText(path);
    domt_score_report report;
    Check(domt_score(hyps.get(), refs.get(), &report));
    return report;
  };
  const auto report = score(cfg.hyp);
  out << "p1\tp2\tp3\tp4\tBP\tBLEU\tMETEOR";
  if (!cfg.baseline.empty()) out << "\tBLEU_delta\tMETEOR_delta";
  out << '\n';
  for (double p : report.precisions) out << Fixed(100.0 * p, 2) << '\t';
  out << Fixed(report.brevity_penalty, 4) << '\t' << Fixed(100.0 * report.bleu, 2)
      << '\t' << Fixed(report.meteor, 4);
  if (!cfg.baseline.empty()) {
    const auto base = score(cfg.baseline);
    out << '\t' << Signed(100.0 * (report.bleu - base.bleu), 2) << '\t'
        << Signed(report.meteor - base.meteor, 4);
  }
  out << '\n';
}

void RunStats(const PipelineConfig::Stats& cfg, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> corpora;
  corpora.emplace_back(cfg.reference_name, cfg.reference);
  for (const auto& spec : cfg.corpora) corpora.push_back(SplitAssignment(spec, "--corpus"));

  std::vector<std::pair<std::string, double>> samples;
  for (const auto& spec : cfg.samples) {
    auto [name, value] = SplitAssignment(spec, "--sample");
    double fraction = 0.0;
    try {
      std::size_t used = 0;
      fraction = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      Usage("--sample fraction is not a number: '" + value + "'");
    }
    bool known = false;
    for (const auto& c : corpora) known = known || c.first == name;
    if (!known) Usage("--sample names unknown corpus '" + name + "'");
    samples.emplace_back(name, fraction);
  }

  auto bpe = LoadBpe(cfg.bpe);
  std::vector<Text> texts;
  for (const auto& [name, path] : corpora) {
    auto text = LoadText(path);
    for (const auto& [sample_name, fraction] : samples) {
      if (sample_name != name) continue;
      domt_text* sampled = nullptr;
      Check(domt_text_sample(text.get(), fraction, cfg.seed, &sampled));
      text.reset(sampled);
    }
    texts.push_back(std::move(text));
  }
  auto reference = BuildVocab(texts.front().get(), cfg.min_count);

  std::vector<domt_domain_stats> rows(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Check(domt_domain_stats_compute(texts[i].get(), bpe.get(), reference.get(),
                                    cfg.min_count, &rows[i]));
  }
  out << "statistic";
  for (const auto& c : corpora) out << '\t' << c.first;
  out << '\n';
  auto row = [&](const std::string& label, auto&& cell) {
    out << label;
    for (const auto& r : rows) out << '\t' << cell(r);
    out << '\n';
  };
  row("sentences", [](const domt_domain_stats& r) { return std::to_string(r.sentences); });
  row("avg_len_original",
      [](const domt_domain_stats& r) { return Fixed(r.avg_len_before, 2); });
  row("avg_len_bpe", [](const domt_domain_stats& r) { return Fixed(r.avg_len_after, 2); });
  row("vocab_min_count_" + std::to_string(cfg.min_count),
      [](const domt_domain_stats& r) { return std::to_string(r.vocab_size); });
  row("overlap_" + cfg.reference_name, [](const domt_domain_stats& r) {
    return std::to_string(r.overlap_with_reference);
  });
  row("bpe_inflation",
      [](const domt_domain_stats& r) { return Fixed(r.inflation_ratio, 4); });
}

void RunBpeLearn(const PipelineConfig::BpeLearn& cfg) {
  std::vector<Text> texts;
  std::vector<const domt_text*> views;
  for (const auto& path : cfg.inputs) {
    texts.push_back(LoadText(path));
    views.push_back(texts.back().get());
  }
  domt_bpe* raw = nullptr;
  Check(domt_bpe_learn(views.data(), views.size(), cfg.merges, &raw));
  Bpe bpe(raw);
  Check(domt_bpe_save(bpe.get(), cfg.output.c_str()));
}

void RunBpeApply(const PipelineConfig::BpeApply& cfg) {
  auto text = LoadText(cfg.input);
  domt_text* raw = nullptr;
  if (cfg.decode) {
    Check(domt_text_debpe(text.get(), &raw));
  } else {
    if (cfg.model.empty()) Usage("bpe-apply needs --model unless --decode is given");
    auto bpe = LoadBpe(cfg.model);
    Check(domt_bpe_apply(bpe.get(), text.get(), &raw));
  }
  Text result(raw);
  Check(domt_text_write(result.get(), cfg.output.c_str()));
}

void AddSubcommands(CLI::App& app, PipelineConfig& config) {
  const auto existing = CLI::ExistingFile;

  {
    auto& c = config.train_align;
    auto* sub = app.add_subcommand("train-align", "Train an IBM1 or diagonal alignment model");
    sub->add_option("--source", c.source, "Source side, one sentence per line")
        ->required()->check(existing);
    sub->add_option("--target", c.target, "Target side, line-aligned with --source")
        ->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Model file to write")->required();
    sub->add_option("--iterations", c.iterations, "EM iterations")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--model", c.model, "Model family")
        ->capture_default_str()->check(CLI::IsMember({"ibm1", "diagonal"}));
    sub->add_option("--null-prob", c.null_prob, "Empty-word alignment probability")
        ->capture_default_str();
    sub->add_option("--tension", c.tension, "Initial diagonal tension")
        ->capture_default_str();
    sub->add_flag("--learn-tension,!--fixed-tension", c.learn_tension,
                  "Update the tension after each iteration")
        ->capture_default_str();
    sub->add_option("--tension-step", c.tension_step, "Tension step size")
        ->capture_default_str();
    sub->add_option("--alpha", c.alpha, "Add-alpha smoothing of expected counts")
        ->capture_default_str();
    sub->add_flag("--reverse", c.reverse, "Train target-to-source")->capture_default_str();
    sub->add_flag("-v,--verbose", c.verbose, "Log per-iteration likelihood to stderr");
  }
  {
    auto& c = config.align;
    auto* sub = app.add_subcommand("align", "Write Viterbi alignments as target-source pairs");
    sub->add_option("--model", c.model, "Alignment model file")->required()->check(existing);
    sub->add_option("--source", c.source, "Source side")->required()->check(existing);
    sub->add_option("--target", c.target, "Target side")->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Alignment file to write")->required();
    sub->add_option("--unseen", c.unseen, "Handling of pairs absent from the model")
        ->capture_default_str()->check(CLI::IsMember({"floor", "error"}));
    sub->add_option("--floor", c.floor, "Probability used for absent pairs")
        ->capture_default_str();
  }
  {
    auto& c = config.shortlist;
    auto* sub = app.add_subcommand("build-shortlist", "Extract a top-k lexical shortlist");
    sub->add_option("--model", c.model, "Alignment model file")->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Shortlist file to write");
    sub->add_option("--export", c.export_path, "Also write bare 'source target prob' triples");
    sub->add_option("-k,--k", c.k, "Candidates kept per source token")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("-f,--frequent", c.frequent_f,
                    "Most frequent target tokens always allowed")
        ->capture_default_str();
    sub->add_option("--target-corpus", c.target_corpus,
                    "Target text counted for --frequent")
        ->check(existing);
    sub->add_option("--direction", c.direction, "Table orientation")
        ->capture_default_str()->check(CLI::IsMember({"s2t", "t2s"}));
    sub->add_flag("--no-reserved", c.no_reserved, "Do not add </s> and <unk>")
        ->capture_default_str();
  }
  {
    auto& c = config.coverage;
    auto* sub = app.add_subcommand("coverage", "Share of reference tokens a shortlist reaches");
    sub->add_option("--shortlist", c.shortlist, "Shortlist file")->required()->check(existing);
    sub->add_option("--source", c.source, "Source side")->required()->check(existing);
    sub->add_option("--target", c.target, "Reference target side")->required()->check(existing);
    sub->add_option("--per-sentence", c.per_sentence, "Write one coverage value per pair");
  }
  {
    auto& c = config.rerank;
    auto* sub = app.add_subcommand("rerank", "Pick the hypothesis that agrees most with its beam");
    sub->add_option("--nbest", c.nbest, "N-best list (id ||| text ||| features ||| score)")
        ->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Translations to write, one per list")
        ->required();
    sub->add_option("--annotated", c.annotated, "Also write reranked lists with agreement");
    sub->add_option("--metric", c.metric, "Similarity used for agreement")
        ->capture_default_str()->check(CLI::IsMember({"sentbleu", "chrf", "ter", "meteor"}));
    sub->add_option("--beam", c.beam, "Maximum hypotheses per list")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_flag("--passthrough", c.passthrough, "Keep the decoder's 1-best")
        ->capture_default_str();
    sub->add_option("--length-normalization", c.length_normalization,
                    "Decoder length normalization (recorded only)")
        ->capture_default_str();
  }
  {
    auto& c = config.score;
    auto* sub = app.add_subcommand("score", "BLEU breakdown and METEOR against references");
    sub->add_option("--hyp", c.hyp, "System output")->required()->check(existing);
    sub->add_option("--ref", c.ref, "References")->required()->check(existing);
    sub->add_option("--baseline", c.baseline, "Baseline output for delta columns")
        ->check(existing);
  }
  {
    auto& c = config.stats;
    auto* sub = app.add_subcommand("stats", "Per-domain corpus statistics");
    sub->add_option("--reference", c.reference, "Reference domain text")
        ->required()->check(existing);
    sub->add_option("--reference-name", c.reference_name, "Column name of the reference")
        ->capture_default_str();
    sub->add_option("--bpe", c.bpe, "BPE model used for length inflation")
        ->required()->check(existing);
    sub->add_option("--corpus", c.corpora, "Additional domain as NAME=PATH");
    sub->add_option("--sample", c.samples, "Subsample a domain as NAME=FRACTION");
    sub->add_option("--min-count", c.min_count, "Minimum count for vocabulary entries")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Seed for --sample")->capture_default_str();
  }
  {
    auto& c = config.bpe_learn;
    auto* sub = app.add_subcommand("bpe-learn", "Learn BPE merges");
    sub->add_option("-i,--input", c.inputs, "Training text; repeat for a joint model")
        ->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Merge file to write")->required();
    sub->add_option("--merges", c.merges, "Number of merge operations")
        ->capture_default_str();
  }
  {
    auto& c = config.bpe_apply;
    auto* sub = app.add_subcommand("bpe-apply", "Segment text with BPE, or undo it");
    sub->add_option("--model", c.model, "Merge file")->check(existing);
    sub->add_option("-i,--input", c.input, "Text to process")->required()->check(existing);
    sub->add_option("-o,--output", c.output, "Text to write")->required();
    sub->add_flag("--decode", c.decode, "Join '@@ ' continuations instead")
        ->capture_default_str();
  }
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  CLI::App app("Domain-robustness toolkit for NMT: alignment, shortlists, "
               "re-ranking, scoring and corpus statistics",
               "domt");
  app.set_version_flag("--version", domt_version());
  app.set_config("--config", "", "INI file with one [section] per subcommand");
  app.require_subcommand(1);
  AddSubcommands(app, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "train-align") {
      RunTrainAlign(config.train_align, err);
    } else if (name == "align") {
      RunAlign(config.align);
    } else if (name == "build-shortlist") {
      RunBuildShortlist(config.shortlist);
    } else if (name == "coverage") {
      RunCoverage(config.coverage, out);
    } else if (name == "rerank") {
      RunRerank(config.rerank);
    } else if (name == "score") {
      RunScore(config.score, out);
    } else if (name == "stats") {
      RunStats(config.stats, out);
    } else if (name == "bpe-learn") {
      RunBpeLearn(config.bpe_learn);
    } else if (name == "bpe-apply") {
      RunBpeApply(config.bpe_apply);
    }
  } catch (const CommandError& e) {
    err << "domt " << name << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "domt " << name << ": " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace domt::cli
