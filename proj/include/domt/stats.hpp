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

#ifndef DOMT_STATS_HPP_
#define DOMT_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "domt/bpe.hpp"
#include "domt/corpus.hpp"

namespace domt::corpus {

// Domain-distance summary of one side of a corpus against a reference
// vocabulary. Vocabulary figures use the whitespace tokens before BPE.
struct DomainStats {
  std::size_t sentences = 0;
  double avg_len_before = 0.0;
  double avg_len_after = 0.0;
  std::size_t vocab_size = 0;
  std::size_t overlap_with_reference = 0;
  // avg_len_after / avg_len_before; 1 when the corpus has no tokens.
  double inflation_ratio = 1.0;
};

DomainStats ComputeDomainStats(std::span<const Sentence> sentences,
                               const bpe::BpeModel& bpe,
                               const Vocabulary& reference_vocab,
                               std::uint64_t min_count);

}  // namespace domt::corpus

#endif  // DOMT_STATS_HPP_
