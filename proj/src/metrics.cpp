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

#include "domt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "domt/error.hpp"
#include "utf8.hpp"

namespace domt::metrics {
namespace {

using NgramCounts = std::unordered_map<std::string, std::uint64_t>;

// Word n-grams of one order, keyed by their space-joined text.
NgramCounts WordNgrams(const Sentence& s, std::size_t n) {
  NgramCounts counts;
  if (s.size() < n) return counts;
  for (std::size_t i = 0; i + n <= s.size(); ++i) {
    std::string key = s.tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key.push_back(' ');
      key += s.tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::uint64_t ClippedMatches(const NgramCounts& hyp, const NgramCounts& ref) {
  std::uint64_t m = 0;
  for (const auto& [g, c] : hyp) {
    auto it = ref.find(g);
    if (it != ref.end()) m += std::min(c, it->second);
  }
  return m;
}

std::uint64_t Total(const NgramCounts& counts) {
  std::uint64_t t = 0;
  for (const auto& [g, c] : counts) t += c;
  return t;
}

double BrevityPenalty(std::uint64_t hyp_len, std::uint64_t ref_len) {
  if (hyp_len == 0) return 0.0;
  return std::min(1.0, std::exp(1.0 - static_cast<double>(ref_len) /
                                          static_cast<double>(hyp_len)));
}

// Character n-grams of order n inside each word.
NgramCounts CharNgrams(const Sentence& s, std::size_t n) {
  NgramCounts counts;
  for (const auto& word : s.tokens) {
    const auto cps = utf8::CodePoints(word);
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      std::string key;
      for (std::size_t k = 0; k < n; ++k) key.append(cps[i + k]);
      ++counts[key];
    }
  }
  return counts;
}

double FScore(double precision, double recall, double beta) {
  if (precision + recall <= 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

double MeteorFromCounts(double matches, double chunks, double hyp_len,
                        double ref_len, const MeteorParams& p) {
  if (matches <= 0.0) return 0.0;
  const double precision = matches / hyp_len;
  const double recall = matches / ref_len;
  const double fmean =
      precision * recall / (p.alpha * precision + (1.0 - p.alpha) * recall);
  const double penalty = p.gamma * std::pow(chunks / matches, p.beta);
  return fmean * (1.0 - penalty);
}

}  // namespace

// -- BLEU -------------------------------------------------------------------

void BleuStats::Add(const Sentence& hyp, const Sentence& ref) {
  hyp_length += hyp.size();
  ref_length += ref.size();
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    const auto h = WordNgrams(hyp, n);
    const auto r = WordNgrams(ref, n);
    matches[n - 1] += ClippedMatches(h, r);
    totals[n - 1] += Total(h);
  }
}

BleuBreakdown ComposeBleu(const BleuStats& stats) {
  BleuBreakdown out;
  out.hyp_length = stats.hyp_length;
  out.ref_length = stats.ref_length;
  out.empty_hypothesis = stats.hyp_length == 0;
  bool all_positive = true;
  double log_sum = 0.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    out.precisions[n] = stats.totals[n] == 0
                            ? 0.0
                            : static_cast<double>(stats.matches[n]) /
                                  static_cast<double>(stats.totals[n]);
    if (out.precisions[n] > 0.0) {
      log_sum += std::log(out.precisions[n]);
    } else {
      all_positive = false;
    }
  }
  out.brevity_penalty = BrevityPenalty(stats.hyp_length, stats.ref_length);
  out.bleu = all_positive ? out.brevity_penalty * std::exp(log_sum / kBleuOrder) : 0.0;
  return out;
}

BleuBreakdown CorpusBleu(std::span<const Sentence> hypotheses,
                         std::span<const Sentence> references) {
  if (hypotheses.size() != references.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "hypothesis/reference count mismatch " + std::to_string(hypotheses.size()) +
             " vs " + std::to_string(references.size()));
  }
  if (hypotheses.empty()) {
    Fail(ErrorCode::kInvalidArgument, "BLEU needs at least one sentence");
  }
  BleuStats stats;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    stats.Add(hypotheses[i], references[i]);
  }
  return ComposeBleu(stats);
}

double SentenceBleu(const Sentence& hyp, const Sentence& ref) {
  if (hyp.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    const auto h = WordNgrams(hyp, n);
    const auto m = static_cast<double>(ClippedMatches(h, WordNgrams(ref, n)));
    const auto t = static_cast<double>(Total(h));
    if (n == 1) {
      if (m == 0.0) return 0.0;
      log_sum += std::log(m / t);
    } else {
      log_sum += std::log((m + 1.0) / (t + 1.0));
    }
  }
  return BrevityPenalty(hyp.size(), ref.size()) * std::exp(log_sum / kBleuOrder);
}

// -- chrF -------------------------------------------------------------------

double Chrf(const Sentence& hyp, const Sentence& ref, const ChrfParams& params) {
  if (params.order < 1 || !(params.beta > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "chrF needs order >= 1 and beta > 0");
  }
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  int orders = 0;
  bool hyp_has_chars = false;
  for (int n = 1; n <= params.order; ++n) {
    const auto r = CharNgrams(ref, static_cast<std::size_t>(n));
    const auto h = CharNgrams(hyp, static_cast<std::size_t>(n));
    if (n == 1) hyp_has_chars = !h.empty();
    const auto ref_total = Total(r);
    if (ref_total == 0) continue;
    const auto hyp_total = Total(h);
    const auto m = static_cast<double>(ClippedMatches(h, r));
    precision_sum += hyp_total == 0 ? 0.0 : m / static_cast<double>(hyp_total);
    recall_sum += m / static_cast<double>(ref_total);
    ++orders;
  }
  if (orders == 0) return hyp_has_chars ? 0.0 : 1.0;
  return FScore(precision_sum / orders, recall_sum / orders, params.beta);
}

// -- TER --------------------------------------------------------------------

double TerBasic(const Sentence& hyp, const Sentence& ref) {
  if (ref.empty()) Fail(ErrorCode::kInvalidArgument, "TER needs a non-empty reference");
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<std::size_t> prev(m + 1);
  std::vector<std::size_t> cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (hyp.tokens[i - 1] == ref.tokens[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    prev.swap(cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(m);
}

// -- METEOR-lite ------------------------------------------------------------

double MeteorLite(const Sentence& hyp, const Sentence& ref,
                  const MeteorParams& params) {
  const auto a = MeteorAlign(hyp, ref);
  return MeteorFromCounts(static_cast<double>(a.matches),
                          static_cast<double>(a.chunks),
                          static_cast<double>(hyp.size()),
                          static_cast<double>(ref.size()), params);
}

double CorpusMeteorLite(std::span<const Sentence> hypotheses,
                        std::span<const Sentence> references,
                        const MeteorParams& params) {
  if (hypotheses.size() != references.size()) {
    Fail(ErrorCode::kInvalidArgument, "hypothesis/reference count mismatch");
  }
  double matches = 0, chunks = 0, hyp_len = 0, ref_len = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto a = MeteorAlign(hypotheses[i], references[i]);
    matches += static_cast<double>(a.matches);
    chunks += static_cast<double>(a.chunks);
    hyp_len += static_cast<double>(hypotheses[i].size());
    ref_len += static_cast<double>(references[i].size());
  }
  return MeteorFromCounts(matches, chunks, hyp_len, ref_len, params);
}

// -- Similarity dispatch ------------------------------------------------------

std::string_view MetricName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kSentBleu: return "sentbleu";
    case MetricKind::kChrf: return "chrf";
    case MetricKind::kTer: return "ter";
    case MetricKind::kMeteor: return "meteor";
  }
  return "?";
}

MetricKind ParseMetricKind(std::string_view name) {
  if (name == "sentbleu") return MetricKind::kSentBleu;
  if (name == "chrf") return MetricKind::kChrf;
  if (name == "ter") return MetricKind::kTer;
  if (name == "meteor") return MetricKind::kMeteor;
  Fail(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) +
                                        "' (sentbleu|chrf|ter|meteor)");
}

double Metric::Similarity(const Sentence& hyp, const Sentence& ref) const {
  switch (kind) {
    case MetricKind::kSentBleu: return SentenceBleu(hyp, ref);
    case MetricKind::kChrf: return Chrf(hyp, ref, chrf);
    case MetricKind::kTer:
      if (ref.empty()) return hyp.empty() ? 1.0 : 0.0;
      return std::max(0.0, 1.0 - TerBasic(hyp, ref));
    case MetricKind::kMeteor: return MeteorLite(hyp, ref, meteor);
  }
  return 0.0;
}

}  // namespace domt::metrics
