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

/*
 * C interface to the domt library.
 *
 * Objects are opaque handles created by *_load / *_build / *_train style
 * functions and released with the matching *_free function (free functions
 * accept NULL). Every fallible call returns a domt_status; on failure the
 * output handle is left untouched and domt_last_error() describes the
 * problem. Handles are immutable once created and may be shared between
 * threads; the error message is per thread.
 */
#ifndef DOMT_DOMT_H_
#define DOMT_DOMT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define DOMT_API __declspec(dllexport)
#else
#  define DOMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum domt_status {
  DOMT_OK = 0,
  DOMT_ERR_INVALID_ARGUMENT = 1,
  DOMT_ERR_IO = 2,
  DOMT_ERR_FORMAT = 3,
  DOMT_ERR_NUMERIC = 4,
  DOMT_ERR_INTERNAL = 5
} domt_status;

DOMT_API const char* domt_version(void);
DOMT_API const char* domt_status_name(domt_status status);
/* Message of the last failed call on this thread ("" if none). */
DOMT_API const char* domt_last_error(void);

/* ---- Text: a list of whitespace-tokenized sentences ------------------- */

typedef struct domt_text domt_text;

DOMT_API domt_status domt_text_load(const char* path, domt_text** out);
DOMT_API domt_status domt_text_from_lines(const char* const* lines, size_t count,
                                          domt_text** out);
DOMT_API size_t domt_text_size(const domt_text* text);
/* Copies line `index` (tokens joined by single spaces) into `buf`,
 * snprintf-style: *needed receives the length without the terminator. */
DOMT_API domt_status domt_text_line(const domt_text* text, size_t index,
                                    char* buf, size_t capacity, size_t* needed);
DOMT_API domt_status domt_text_write(const domt_text* text, const char* path);
/* Keeps round(fraction * size) sentences, chosen reproducibly from `seed`. */
DOMT_API domt_status domt_text_sample(const domt_text* text, double fraction,
                                      uint64_t seed, domt_text** out);
DOMT_API void domt_text_free(domt_text* text);

/* ---- Parallel corpus -------------------------------------------------- */

typedef struct domt_corpus domt_corpus;

typedef enum domt_side { DOMT_SOURCE = 0, DOMT_TARGET = 1 } domt_side;

DOMT_API domt_status domt_corpus_load(const char* source_path,
                                      const char* target_path,
                                      domt_corpus** out);
DOMT_API domt_status domt_corpus_from_texts(const domt_text* source,
                                            const domt_text* target,
                                            domt_corpus** out);
DOMT_API size_t domt_corpus_size(const domt_corpus* corpus);
DOMT_API domt_status domt_corpus_side(const domt_corpus* corpus, domt_side side,
                                      domt_text** out);
/* Same pairs with source and target exchanged. */
DOMT_API domt_status domt_corpus_swap(const domt_corpus* corpus,
                                      domt_corpus** out);
DOMT_API void domt_corpus_free(domt_corpus* corpus);

/* ---- Vocabulary ------------------------------------------------------- */

typedef struct domt_vocab domt_vocab;

/* Tokens seen at least `min_count` times ("more than 20" is 21). */
DOMT_API domt_status domt_vocab_build(const domt_text* text, uint64_t min_count,
                                      domt_vocab** out);
DOMT_API size_t domt_vocab_size(const domt_vocab* vocab);
DOMT_API uint64_t domt_vocab_count(const domt_vocab* vocab, const char* token);
DOMT_API size_t domt_vocab_overlap(const domt_vocab* a, const domt_vocab* b);
DOMT_API void domt_vocab_free(domt_vocab* vocab);

/* ---- Byte-pair encoding ----------------------------------------------- */

typedef struct domt_bpe domt_bpe;

/* Learns on the concatenation of `texts` (pass both sides for a joint
 * vocabulary). */
DOMT_API domt_status domt_bpe_learn(const domt_text* const* texts,
                                    size_t text_count, size_t num_merges,
                                    domt_bpe** out);
DOMT_API domt_status domt_bpe_load(const char* path, domt_bpe** out);
DOMT_API domt_status domt_bpe_save(const domt_bpe* bpe, const char* path);
DOMT_API size_t domt_bpe_num_merges(const domt_bpe* bpe);
DOMT_API domt_status domt_bpe_apply(const domt_bpe* bpe, const domt_text* text,
                                    domt_text** out);
DOMT_API domt_status domt_text_debpe(const domt_text* text, domt_text** out);
DOMT_API void domt_bpe_free(domt_bpe* bpe);

typedef struct domt_domain_stats {
  size_t sentences;
  double avg_len_before;
  double avg_len_after;
  size_t vocab_size;
  size_t overlap_with_reference;
  double inflation_ratio;
} domt_domain_stats;

DOMT_API domt_status domt_domain_stats_compute(const domt_text* text,
                                               const domt_bpe* bpe,
                                               const domt_vocab* reference,
                                               uint64_t min_count,
                                               domt_domain_stats* out);

/* ---- Word alignment --------------------------------------------------- */

typedef struct domt_align_model domt_align_model;

typedef enum domt_model_type {
  DOMT_MODEL_IBM1 = 0,
  DOMT_MODEL_DIAGONAL = 1
} domt_model_type;

typedef enum domt_unseen_policy {
  DOMT_UNSEEN_ERROR = 0,
  DOMT_UNSEEN_FLOOR = 1
} domt_unseen_policy;

typedef struct domt_train_config {
  int iterations;
  domt_model_type model;
  double null_prob;
  double tension_init;
  int learn_tension;
  double tension_step;
  double smoothing_alpha;
} domt_train_config;

/* Defaults: 5 iterations, diagonal, null_prob 0.08, tension 4.0 learned with
 * step 0.1, no smoothing. */
DOMT_API void domt_train_config_init(domt_train_config* config);

typedef void (*domt_iteration_callback)(int iteration, double log_likelihood,
                                        double tension, void* user_data);

DOMT_API domt_status domt_align_train(const domt_corpus* corpus,
                                      const domt_train_config* config,
                                      domt_iteration_callback callback,
                                      void* user_data, domt_align_model** out);
DOMT_API domt_status domt_align_load(const char* path, domt_align_model** out);
DOMT_API domt_status domt_align_save(const domt_align_model* model,
                                     const char* path);
DOMT_API domt_status domt_align_model_info(const domt_align_model* model,
                                           domt_model_type* type,
                                           double* tension, double* null_prob,
                                           int* iterations);
/* t(target | source); 0 when the pair is absent. */
DOMT_API domt_status domt_align_prob(const domt_align_model* model,
                                     const char* source, const char* target,
                                     double* out);
DOMT_API domt_status domt_align_log_likelihood(const domt_align_model* model,
                                               const domt_corpus* corpus,
                                               domt_unseen_policy unseen,
                                               double floor, double* out);
DOMT_API domt_status domt_align_tension_gradient(const domt_align_model* model,
                                                 const domt_corpus* corpus,
                                                 double* out);
/* One line of "target-source" links per pair, empty-word links omitted. */
DOMT_API domt_status domt_align_write_alignments(const domt_align_model* model,
                                                 const domt_corpus* corpus,
                                                 domt_unseen_policy unseen,
                                                 double floor, const char* path);
DOMT_API void domt_align_free(domt_align_model* model);

/* ---- Lexical shortlist ------------------------------------------------ */

typedef struct domt_shortlist domt_shortlist;

typedef enum domt_direction {
  DOMT_DIRECTION_S2T = 0,
  DOMT_DIRECTION_T2S = 1
} domt_direction;

typedef struct domt_shortlist_options {
  size_t k;
  size_t frequent_f;
  domt_direction direction;
  /* NULL selects the default markers ("</s>", "<unk>"); otherwise
   * `reserved_count` tokens, possibly zero. */
  const char* const* reserved;
  size_t reserved_count;
} domt_shortlist_options;

DOMT_API void domt_shortlist_options_init(domt_shortlist_options* options);

/* `target_counts` may be NULL when frequent_f is 0. */
DOMT_API domt_status domt_shortlist_build(const domt_align_model* model,
                                          const domt_vocab* target_counts,
                                          const domt_shortlist_options* options,
                                          domt_shortlist** out);
DOMT_API domt_status domt_shortlist_load(const char* path, domt_shortlist** out);
DOMT_API domt_status domt_shortlist_save(const domt_shortlist* shortlist,
                                         const char* path);
DOMT_API domt_status domt_shortlist_export(const domt_shortlist* shortlist,
                                           const char* path);
DOMT_API size_t domt_shortlist_k(const domt_shortlist* shortlist);
DOMT_API size_t domt_shortlist_num_sources(const domt_shortlist* shortlist);

typedef struct domt_coverage {
  size_t reachable_tokens;
  size_t total_tokens;
  double coverage;
} domt_coverage;

/* `per_sentence` may be NULL; otherwise it needs room for one value per
 * corpus pair. */
DOMT_API domt_status domt_shortlist_coverage(const domt_shortlist* shortlist,
                                             const domt_corpus* corpus,
                                             domt_coverage* out,
                                             double* per_sentence,
                                             size_t per_sentence_capacity);
DOMT_API void domt_shortlist_free(domt_shortlist* shortlist);

/* ---- Metrics ---------------------------------------------------------- */

typedef enum domt_metric {
  DOMT_METRIC_SENTBLEU = 0,
  DOMT_METRIC_CHRF = 1,
  DOMT_METRIC_TER = 2,
  DOMT_METRIC_METEOR = 3
} domt_metric;

/* "sentbleu", "chrf", "ter" or "meteor". */
DOMT_API domt_status domt_metric_parse(const char* name, domt_metric* out);
/* Similarity in [0, 1] between two whitespace-tokenized lines. */
DOMT_API domt_status domt_similarity(domt_metric metric, const char* hyp,
                                     const char* ref, double* out);

typedef struct domt_score_report {
  double precisions[4];
  double brevity_penalty;
  uint64_t hyp_length;
  uint64_t ref_length;
  double bleu;
  int empty_hypothesis;
  double meteor;
} domt_score_report;

/* Corpus BLEU breakdown and system-level METEOR-lite, all in [0, 1]. */
DOMT_API domt_status domt_score(const domt_text* hypotheses,
                                const domt_text* references,
                                domt_score_report* out);

/* ---- N-best re-ranking ------------------------------------------------ */

typedef struct domt_nbest domt_nbest;

DOMT_API domt_status domt_nbest_load(const char* path, size_t beam,
                                     domt_nbest** out);
DOMT_API size_t domt_nbest_size(const domt_nbest* nbest);
/* Agreement scores of list `list_index` in original order. */
DOMT_API domt_status domt_nbest_agreement(const domt_nbest* nbest,
                                          size_t list_index, domt_metric metric,
                                          double* scores, size_t capacity,
                                          size_t* count);
/* One de-BPE'd translation per list; `passthrough` keeps the 1-best. */
DOMT_API domt_status domt_nbest_select(const domt_nbest* nbest,
                                       domt_metric metric, int passthrough,
                                       domt_text** out);
DOMT_API domt_status domt_nbest_write_annotated(const domt_nbest* nbest,
                                                domt_metric metric,
                                                const char* path);
DOMT_API void domt_nbest_free(domt_nbest* nbest);

#ifdef __cplusplus
}
#endif

#endif /* DOMT_DOMT_H_ */
