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

#ifndef DOMT_RERANK_HPP_
#define DOMT_RERANK_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "domt/bpe.hpp"
#include "domt/corpus.hpp"
#include "domt/metrics.hpp"

namespace domt::rerank {

inline constexpr std::size_t kDefaultBeam = 6;

struct Hypothesis {
  corpus::Sentence tokens;  // as decoded, possibly BPE-segmented
  double model_score = 0.0;
  std::size_t original_rank = 0;
  std::string features;  // feature field kept verbatim
};

struct NBestList {
  std::size_t sentence_id = 0;
  std::vector<Hypothesis> hypotheses;  // in original_rank order
};

struct RerankedHypothesis {
  Hypothesis hypothesis;
  double agreement_score = 0.0;
  std::size_t final_rank = 0;
};

// Lines "id ||| text ||| features ||| score". Consecutive lines with the same
// id form one list; ids must increase through the file. A malformed line or
// a list longer than `beam` is a kFormat error naming the line.
std::vector<NBestList> ParseNBest(std::istream& in, std::size_t beam,
                                  std::string_view source_name = "<nbest>");
std::vector<NBestList> ReadNBest(const std::filesystem::path& path,
                                 std::size_t beam);

// score_i = sum over j != i of similarity(hyp_i, hyp_j) on de-BPE'd text,
// hyp_j in the reference role. A singleton list scores 0.
std::vector<double> AgreementScores(
    const NBestList& list, const metrics::Metric& metric,
    std::string_view marker = bpe::kDefaultMarker);

// Agreement descending, ties by original rank.
std::vector<RerankedHypothesis> Rerank(
    const NBestList& list, const metrics::Metric& metric,
    std::string_view marker = bpe::kDefaultMarker);

enum class Selection {
  kAgreement,
  kPassthrough,  // decoder 1-best, no re-ranking
};

// One de-BPE'd translation per list. Ids must run 0, 1, 2, ... without gaps.
std::vector<corpus::Sentence> SelectTop(
    std::span<const NBestList> lists, const metrics::Metric& metric,
    Selection selection = Selection::kAgreement,
    std::string_view marker = bpe::kDefaultMarker);

// Re-ranked n-best output with the agreement score appended as a fifth field.
void WriteAnnotated(const std::filesystem::path& path,
                    std::span<const NBestList> lists,
                    const metrics::Metric& metric,
                    std::string_view marker = bpe::kDefaultMarker);

}  // namespace domt::rerank

#endif  // DOMT_RERANK_HPP_
