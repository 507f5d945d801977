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

#include "domt/domt.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "domt/align.hpp"
#include "domt/bpe.hpp"
#include "domt/corpus.hpp"
#include "domt/error.hpp"
#include "domt/metrics.hpp"
#include "domt/rerank.hpp"
#include "domt/shortlist.hpp"
#include "domt/stats.hpp"

struct domt_text {
  std::vector<domt::corpus::Sentence> sentences;
};
struct domt_corpus {
  domt::corpus::ParallelCorpus corpus;
};
struct domt_vocab {
  domt::corpus::Vocabulary vocab;
};
struct domt_bpe {
  domt::bpe::BpeModel model;
};
struct domt_align_model {
  domt::align::AlignmentModel model;
};
struct domt_shortlist {
  domt::shortlist::Shortlist shortlist;
};
struct domt_nbest {
  std::vector<domt::rerank::NBestList> lists;
};

namespace {

using domt::Error;
using domt::ErrorCode;

thread_local std::string g_last_error;

domt_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DOMT_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return DOMT_ERR_IO;
    case ErrorCode::kFormat: return DOMT_ERR_FORMAT;
    case ErrorCode::kNumeric: return DOMT_ERR_NUMERIC;
  }
  return DOMT_ERR_INTERNAL;
}

template <typename F>
domt_status Guard(F&& body) {
  try {
    body();
    return DOMT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return DOMT_ERR_INTERNAL;
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

template <typename Handle, typename... Args>
void Emit(Handle** out, Args&&... args) {
  *out = new Handle{std::forward<Args>(args)...};
}

domt::metrics::Metric MetricOf(domt_metric m) {
  domt::metrics::Metric metric;
  switch (m) {
    case DOMT_METRIC_SENTBLEU: metric.kind = domt::metrics::MetricKind::kSentBleu; break;
    case DOMT_METRIC_CHRF: metric.kind = domt::metrics::MetricKind::kChrf; break;
    case DOMT_METRIC_TER: metric.kind = domt::metrics::MetricKind::kTer; break;
    case DOMT_METRIC_METEOR: metric.kind = domt::metrics::MetricKind::kMeteor; break;
    default: Require(false, "unknown metric");
  }
  return metric;
}

domt::align::InferenceOptions InferenceOf(domt_unseen_policy unseen, double floor) {
  domt::align::InferenceOptions opts;
  Require(unseen == DOMT_UNSEEN_ERROR || unseen == DOMT_UNSEEN_FLOOR,
          "unknown unseen-token policy");
  opts.unseen = unseen == DOMT_UNSEEN_ERROR ? domt::align::UnseenPolicy::kError
                                            : domt::align::UnseenPolicy::kFloor;
  Require(floor > 0.0 && floor <= 1.0, "floor probability must be in (0, 1]");
  opts.floor = floor;
  return opts;
}

}  // namespace

extern "C" {

const char* domt_version(void) { return "1.0.0"; }

const char* domt_status_name(domt_status status) {
  switch (status) {
    case DOMT_OK: return "ok";
    case DOMT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DOMT_ERR_IO: return "i/o error";
    case DOMT_ERR_FORMAT: return "format error";
    case DOMT_ERR_NUMERIC: return "numeric error";
    case DOMT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* domt_last_error(void) { return g_last_error.c_str(); }

// -- text ---------------------------------------------------------------------

domt_status domt_text_load(const char* path, domt_text** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    Emit(out, domt::corpus::ReadSentences(path));
  });
}

domt_status domt_text_from_lines(const char* const* lines, size_t count,
                                 domt_text** out) {
  return Guard([&] {
    Require(out && (lines || count == 0), "null argument");
    std::vector<domt::corpus::Sentence> sentences;
    sentences.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      Require(lines[i] != nullptr, "null line");
      sentences.push_back(domt::corpus::Sentence::FromLine(lines[i]));
    }
    Emit(out, std::move(sentences));
  });
}

size_t domt_text_size(const domt_text* text) {
  return text ? text->sentences.size() : 0;
}

domt_status domt_text_line(const domt_text* text, size_t index, char* buf,
                           size_t capacity, size_t* needed) {
  return Guard([&] {
    Require(text != nullptr, "null argument");
    Require(index < text->sentences.size(), "line index out of range");
    const std::string line = text->sentences[index].ToLine();
    if (needed) *needed = line.size();
    if (buf && capacity > 0) {
      const size_t n = std::min(capacity - 1, line.size());
      std::memcpy(buf, line.data(), n);
      buf[n] = '\0';
    }
  });
}

domt_status domt_text_write(const domt_text* text, const char* path) {
  return Guard([&] {
    Require(text && path, "null argument");
    domt::corpus::WriteSentences(path, text->sentences);
  });
}

domt_status domt_text_sample(const domt_text* text, double fraction,
                             uint64_t seed, domt_text** out) {
  return Guard([&] {
    Require(text && out, "null argument");
    Emit(out, domt::corpus::Sample(text->sentences, fraction, seed));
  });
}

void domt_text_free(domt_text* text) { delete text; }

// -- corpus -------------------------------------------------------------------

domt_status domt_corpus_load(const char* source_path, const char* target_path,
                             domt_corpus** out) {
  return Guard([&] {
    Require(source_path && target_path && out, "null argument");
    Emit(out, domt::corpus::LoadParallel(source_path, target_path));
  });
}

domt_status domt_corpus_from_texts(const domt_text* source,
                                   const domt_text* target, domt_corpus** out) {
  return Guard([&] {
    Require(source && target && out, "null argument");
    Emit(out, domt::corpus::Zip(source->sentences, target->sentences));
  });
}

size_t domt_corpus_size(const domt_corpus* corpus) {
  return corpus ? corpus->corpus.size() : 0;
}

domt_status domt_corpus_side(const domt_corpus* corpus, domt_side side,
                             domt_text** out) {
  return Guard([&] {
    Require(corpus && out, "null argument");
    Require(side == DOMT_SOURCE || side == DOMT_TARGET, "unknown corpus side");
    Emit(out, side == DOMT_SOURCE ? domt::corpus::SourceSide(corpus->corpus)
                                  : domt::corpus::TargetSide(corpus->corpus));
  });
}

domt_status domt_corpus_swap(const domt_corpus* corpus, domt_corpus** out) {
  return Guard([&] {
    Require(corpus && out, "null argument");
    domt::corpus::ParallelCorpus swapped;
    swapped.pairs.reserve(corpus->corpus.size());
    for (const auto& p : corpus->corpus.pairs) swapped.pairs.push_back({p.target, p.source});
    Emit(out, std::move(swapped));
  });
}

void domt_corpus_free(domt_corpus* corpus) { delete corpus; }

// -- vocabulary ---------------------------------------------------------------

domt_status domt_vocab_build(const domt_text* text, uint64_t min_count,
                             domt_vocab** out) {
  return Guard([&] {
    Require(text && out, "null argument");
    Emit(out, domt::corpus::BuildVocab(text->sentences, min_count));
  });
}

size_t domt_vocab_size(const domt_vocab* vocab) {
  return vocab ? vocab->vocab.size() : 0;
}

uint64_t domt_vocab_count(const domt_vocab* vocab, const char* token) {
  return vocab && token ? vocab->vocab.count(token) : 0;
}

size_t domt_vocab_overlap(const domt_vocab* a, const domt_vocab* b) {
  return a && b ? domt::corpus::VocabOverlap(a->vocab, b->vocab) : 0;
}

void domt_vocab_free(domt_vocab* vocab) { delete vocab; }

// -- BPE ----------------------------------------------------------------------

domt_status domt_bpe_learn(const domt_text* const* texts, size_t text_count,
                           size_t num_merges, domt_bpe** out) {
  return Guard([&] {
    Require(out && (texts || text_count == 0), "null argument");
    std::vector<domt::corpus::Sentence> all;
    for (size_t i = 0; i < text_count; ++i) {
      Require(texts[i] != nullptr, "null text");
      all.insert(all.end(), texts[i]->sentences.begin(), texts[i]->sentences.end());
    }
    Emit(out, domt::bpe::Learn(all, num_merges));
  });
}

domt_status domt_bpe_load(const char* path, domt_bpe** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    Emit(out, domt::bpe::ReadModel(path));
  });
}

domt_status domt_bpe_save(const domt_bpe* bpe, const char* path) {
  return Guard([&] {
    Require(bpe && path, "null argument");
    domt::bpe::WriteModel(path, bpe->model);
  });
}

size_t domt_bpe_num_merges(const domt_bpe* bpe) {
  return bpe ? bpe->model.merges().size() : 0;
}

domt_status domt_bpe_apply(const domt_bpe* bpe, const domt_text* text,
                           domt_text** out) {
  return Guard([&] {
    Require(bpe && text && out, "null argument");
    Emit(out, domt::bpe::ApplyAll(bpe->model, text->sentences));
  });
}

domt_status domt_text_debpe(const domt_text* text, domt_text** out) {
  return Guard([&] {
    Require(text && out, "null argument");
    std::vector<domt::corpus::Sentence> joined;
    joined.reserve(text->sentences.size());
    for (const auto& s : text->sentences) joined.push_back(domt::bpe::DeBpe(s));
    Emit(out, std::move(joined));
  });
}

void domt_bpe_free(domt_bpe* bpe) { delete bpe; }

domt_status domt_domain_stats_compute(const domt_text* text, const domt_bpe* bpe,
                                      const domt_vocab* reference,
                                      uint64_t min_count, domt_domain_stats* out) {
  return Guard([&] {
    Require(text && bpe && reference && out, "null argument");
    const auto s = domt::corpus::ComputeDomainStats(text->sentences, bpe->model,
                                                    reference->vocab, min_count);
    *out = {s.sentences,  s.avg_len_before,         s.avg_len_after,
            s.vocab_size, s.overlap_with_reference, s.inflation_ratio};
  });
}

// -- alignment ----------------------------------------------------------------

void domt_train_config_init(domt_train_config* config) {
  if (!config) return;
  const domt::align::TrainConfig d;
  config->iterations = d.iterations;
  config->model = d.model == domt::align::ModelType::kIbm1 ? DOMT_MODEL_IBM1
                                                           : DOMT_MODEL_DIAGONAL;
  config->null_prob = d.null_prob;
  config->tension_init = d.tension_init;
  config->learn_tension = d.learn_tension ? 1 : 0;
  config->tension_step = d.tension_step;
  config->smoothing_alpha = d.smoothing_alpha;
}

domt_status domt_align_train(const domt_corpus* corpus,
                             const domt_train_config* config,
                             domt_iteration_callback callback, void* user_data,
                             domt_align_model** out) {
  return Guard([&] {
    Require(corpus && config && out, "null argument");
    Require(config->model == DOMT_MODEL_IBM1 || config->model == DOMT_MODEL_DIAGONAL,
            "unknown model type");
    domt::align::TrainConfig cfg;
    cfg.iterations = config->iterations;
    cfg.model = config->model == DOMT_MODEL_IBM1 ? domt::align::ModelType::kIbm1
                                                 : domt::align::ModelType::kDiagonal;
    cfg.null_prob = config->null_prob;
    cfg.tension_init = config->tension_init;
    cfg.learn_tension = config->learn_tension != 0;
    cfg.tension_step = config->tension_step;
    cfg.smoothing_alpha = config->smoothing_alpha;
    domt::align::IterationObserver observer;
    if (callback) {
      observer = [&](const domt::align::IterationReport& r) {
        callback(r.iteration, r.log_likelihood, r.model->tension(), user_data);
      };
    }
    Emit(out, domt::align::Train(corpus->corpus, cfg, observer));
  });
}

domt_status domt_align_load(const char* path, domt_align_model** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    Emit(out, domt::align::ReadModel(path));
  });
}

domt_status domt_align_save(const domt_align_model* model, const char* path) {
  return Guard([&] {
    Require(model && path, "null argument");
    domt::align::WriteModel(path, model->model);
  });
}

domt_status domt_align_model_info(const domt_align_model* model,
                                  domt_model_type* type, double* tension,
                                  double* null_prob, int* iterations) {
  return Guard([&] {
    Require(model != nullptr, "null argument");
    const auto& m = model->model;
    if (type) {
      *type = m.type() == domt::align::ModelType::kIbm1 ? DOMT_MODEL_IBM1
                                                        : DOMT_MODEL_DIAGONAL;
    }
    if (tension) *tension = m.tension();
    if (null_prob) *null_prob = m.null_prob();
    if (iterations) *iterations = m.iterations_run();
  });
}

domt_status domt_align_prob(const domt_align_model* model, const char* source,
                            const char* target, double* out) {
  return Guard([&] {
    Require(model && source && target && out, "null argument");
    *out = model->model.ttable().Find(source, target).value_or(0.0);
  });
}

domt_status domt_align_log_likelihood(const domt_align_model* model,
                                      const domt_corpus* corpus,
                                      domt_unseen_policy unseen, double floor,
                                      double* out) {
  return Guard([&] {
    Require(model && corpus && out, "null argument");
    *out = domt::align::LogLikelihood(model->model, corpus->corpus,
                                      InferenceOf(unseen, floor));
  });
}

domt_status domt_align_tension_gradient(const domt_align_model* model,
                                        const domt_corpus* corpus, double* out) {
  return Guard([&] {
    Require(model && corpus && out, "null argument");
    *out = domt::align::TensionGradient(model->model, corpus->corpus);
  });
}

domt_status domt_align_write_alignments(const domt_align_model* model,
                                        const domt_corpus* corpus,
                                        domt_unseen_policy unseen, double floor,
                                        const char* path) {
  return Guard([&] {
    Require(model && corpus && path, "null argument");
    const auto opts = InferenceOf(unseen, floor);
    std::vector<domt::corpus::Sentence> lines;
    lines.reserve(corpus->corpus.size());
    for (const auto& p : corpus->corpus.pairs) {
      const auto a = domt::align::ViterbiAlign(model->model, p.source, p.target, opts);
      lines.push_back(domt::corpus::Sentence::FromLine(a.ToPharaoh()));
    }
    domt::corpus::WriteSentences(path, lines);
  });
}

void domt_align_free(domt_align_model* model) { delete model; }

// -- shortlist ----------------------------------------------------------------

void domt_shortlist_options_init(domt_shortlist_options* options) {
  if (!options) return;
  const domt::shortlist::BuildOptions d;
  options->k = d.k;
  options->frequent_f = d.frequent_f;
  options->direction = DOMT_DIRECTION_S2T;
  options->reserved = nullptr;
  options->reserved_count = 0;
}

domt_status domt_shortlist_build(const domt_align_model* model,
                                 const domt_vocab* target_counts,
                                 const domt_shortlist_options* options,
                                 domt_shortlist** out) {
  return Guard([&] {
    Require(model && options && out, "null argument");
    Require(target_counts || options->frequent_f == 0,
            "frequent_f > 0 needs target counts");
    domt::shortlist::BuildOptions opts;
    opts.k = options->k;
    opts.frequent_f = options->frequent_f;
    Require(options->direction == DOMT_DIRECTION_S2T ||
                options->direction == DOMT_DIRECTION_T2S,
            "unknown direction");
    opts.direction = options->direction == DOMT_DIRECTION_S2T
                         ? domt::shortlist::Direction::kSourceToTarget
                         : domt::shortlist::Direction::kTargetToSource;
    if (options->reserved) {
      opts.reserved.clear();
      for (size_t i = 0; i < options->reserved_count; ++i) {
        Require(options->reserved[i] != nullptr, "null reserved token");
        opts.reserved.emplace_back(options->reserved[i]);
      }
    }
    const domt::corpus::Vocabulary empty;
    Emit(out, domt::shortlist::Build(model->model.ttable(),
                                     target_counts ? target_counts->vocab : empty,
                                     opts));
  });
}

domt_status domt_shortlist_load(const char* path, domt_shortlist** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    Emit(out, domt::shortlist::Read(path));
  });
}

domt_status domt_shortlist_save(const domt_shortlist* shortlist, const char* path) {
  return Guard([&] {
    Require(shortlist && path, "null argument");
    domt::shortlist::Write(path, shortlist->shortlist);
  });
}

domt_status domt_shortlist_export(const domt_shortlist* shortlist,
                                  const char* path) {
  return Guard([&] {
    Require(shortlist && path, "null argument");
    domt::shortlist::Export(path, shortlist->shortlist);
  });
}

size_t domt_shortlist_k(const domt_shortlist* shortlist) {
  return shortlist ? shortlist->shortlist.k() : 0;
}

size_t domt_shortlist_num_sources(const domt_shortlist* shortlist) {
  return shortlist ? shortlist->shortlist.per_source().size() : 0;
}

domt_status domt_shortlist_coverage(const domt_shortlist* shortlist,
                                    const domt_corpus* corpus, domt_coverage* out,
                                    double* per_sentence,
                                    size_t per_sentence_capacity) {
  return Guard([&] {
    Require(shortlist && corpus && out, "null argument");
    Require(!per_sentence || per_sentence_capacity >= corpus->corpus.size(),
            "per-sentence buffer too small");
    const auto r = domt::shortlist::Coverage(shortlist->shortlist, corpus->corpus);
    *out = {r.reachable_tokens, r.total_tokens, r.coverage};
    if (per_sentence) {
      std::copy(r.per_sentence.begin(), r.per_sentence.end(), per_sentence);
    }
  });
}

void domt_shortlist_free(domt_shortlist* shortlist) { delete shortlist; }

// -- metrics ------------------------------------------------------------------

domt_status domt_metric_parse(const char* name, domt_metric* out) {
  return Guard([&] {
    Require(name && out, "null argument");
    switch (domt::metrics::ParseMetricKind(name)) {
      case domt::metrics::MetricKind::kSentBleu: *out = DOMT_METRIC_SENTBLEU; break;
      case domt::metrics::MetricKind::kChrf: *out = DOMT_METRIC_CHRF; break;
      case domt::metrics::MetricKind::kTer: *out = DOMT_METRIC_TER; break;
      case domt::metrics::MetricKind::kMeteor: *out = DOMT_METRIC_METEOR; break;
    }
  });
}

domt_status domt_similarity(domt_metric metric, const char* hyp, const char* ref,
                            double* out) {
  return Guard([&] {
    Require(hyp && ref && out, "null argument");
    *out = MetricOf(metric).Similarity(domt::corpus::Sentence::FromLine(hyp),
                                       domt::corpus::Sentence::FromLine(ref));
  });
}

domt_status domt_score(const domt_text* hypotheses, const domt_text* references,
                       domt_score_report* out) {
  return Guard([&] {
    Require(hypotheses && references && out, "null argument");
    const auto b = domt::metrics::CorpusBleu(hypotheses->sentences, references->sentences);
    domt_score_report r{};
    for (int n = 0; n < 4; ++n) r.precisions[n] = b.precisions[n];
    r.brevity_penalty = b.brevity_penalty;
    r.hyp_length = b.hyp_length;
    r.ref_length = b.ref_length;
    r.bleu = b.bleu;
    r.empty_hypothesis = b.empty_hypothesis ? 1 : 0;
    r.meteor = domt::metrics::CorpusMeteorLite(hypotheses->sentences,
                                               references->sentences);
    *out = r;
  });
}

// -- n-best -------------------------------------------------------------------

domt_status domt_nbest_load(const char* path, size_t beam, domt_nbest** out) {
  return Guard([&] {
    Require(path && out, "null argument");
    Emit(out, domt::rerank::ReadNBest(path, beam));
  });
}

size_t domt_nbest_size(const domt_nbest* nbest) {
  return nbest ? nbest->lists.size() : 0;
}

domt_status domt_nbest_agreement(const domt_nbest* nbest, size_t list_index,
                                 domt_metric metric, double* scores,
                                 size_t capacity, size_t* count) {
  return Guard([&] {
    Require(nbest != nullptr, "null argument");
    Require(list_index < nbest->lists.size(), "list index out of range");
    const auto s = domt::rerank::AgreementScores(nbest->lists[list_index],
                                                 MetricOf(metric));
    if (count) *count = s.size();
    if (scores) {
      Require(capacity >= s.size(), "score buffer too small");
      std::copy(s.begin(), s.end(), scores);
    }
  });
}

domt_status domt_nbest_select(const domt_nbest* nbest, domt_metric metric,
                              int passthrough, domt_text** out) {
  return Guard([&] {
    Require(nbest && out, "null argument");
    const auto selection = passthrough ? domt::rerank::Selection::kPassthrough
                                       : domt::rerank::Selection::kAgreement;
    Emit(out, domt::rerank::SelectTop(nbest->lists, MetricOf(metric), selection));
  });
}

domt_status domt_nbest_write_annotated(const domt_nbest* nbest,
                                       domt_metric metric, const char* path) {
  return Guard([&] {
    Require(nbest && path, "null argument");
    domt::rerank::WriteAnnotated(path, nbest->lists, MetricOf(metric));
  });
}

void domt_nbest_free(domt_nbest* nbest) { delete nbest; }

}  // extern "C"
