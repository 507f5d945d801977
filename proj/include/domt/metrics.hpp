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

#ifndef DOMT_METRICS_HPP_
#define DOMT_METRICS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "domt/corpus.hpp"

namespace domt::metrics {

using corpus::Sentence;

inline constexpr int kBleuOrder = 4;

// Clipped n-gram match counts and totals, summed exactly over a corpus.
struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> matches{};
  std::array<std::uint64_t, kBleuOrder> totals{};
  std::uint64_t hyp_length = 0;
  std::uint64_t ref_length = 0;

  void Add(const Sentence& hyp, const Sentence& ref);
};

struct BleuBreakdown {
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 0.0;
  std::uint64_t hyp_length = 0;
  std::uint64_t ref_length = 0;
  double bleu = 0.0;
  // Set when the hypotheses hold no tokens; BP and BLEU are then 0.
  bool empty_hypothesis = false;
};

// precisions p_n = matches/totals; BP = min(1, exp(1 - r/c));
// BLEU = BP * exp(mean log p_n), or 0 if any p_n is 0.
BleuBreakdown ComposeBleu(const BleuStats& stats);

BleuBreakdown CorpusBleu(std::span<const Sentence> hypotheses,
                         std::span<const Sentence> references);

// BLEU-4 with add-one smoothing on orders 2-4; the unigram precision is left
// unsmoothed so a hypothesis sharing no word with the reference scores 0.
double SentenceBleu(const Sentence& hyp, const Sentence& ref);

struct ChrfParams {
  int order = 6;
  double beta = 2.0;
};

// Character n-gram F-beta. Precision and recall are averaged over the orders
// for which the reference has n-grams; n-grams never cross a word boundary.
double Chrf(const Sentence& hyp, const Sentence& ref, const ChrfParams& params = {});

// Word-level edit distance (unit insert/delete/substitute, no shifts)
// divided by the reference length. kInvalidArgument on an empty reference.
double TerBasic(const Sentence& hyp, const Sentence& ref);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

// Exact-match unigram alignment with the most matches and, among those, the
// fewest chunks.
MeteorAlignment MeteorAlign(const Sentence& hyp, const Sentence& ref);

double MeteorLite(const Sentence& hyp, const Sentence& ref,
                  const MeteorParams& params = {});

// System-level score from matches, chunks and lengths summed over the corpus.
double CorpusMeteorLite(std::span<const Sentence> hypotheses,
                        std::span<const Sentence> references,
                        const MeteorParams& params = {});

enum class MetricKind { kSentBleu, kChrf, kTer, kMeteor };

std::string_view MetricName(MetricKind kind);
// Accepts "sentbleu", "chrf", "ter", "meteor".
MetricKind ParseMetricKind(std::string_view name);

// A similarity in [0, 1]; `ref` plays the reference role.
struct Metric {
  MetricKind kind = MetricKind::kSentBleu;
  ChrfParams chrf;
  MeteorParams meteor;

  double Similarity(const Sentence& hyp, const Sentence& ref) const;
};

}  // namespace domt::metrics

#endif  // DOMT_METRICS_HPP_
