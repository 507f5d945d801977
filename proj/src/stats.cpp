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

#include "domt/stats.hpp"

#include "domt/error.hpp"

namespace domt::corpus {

DomainStats ComputeDomainStats(std::span<const Sentence> sentences,
                               const bpe::BpeModel& bpe,
                               const Vocabulary& reference_vocab,
                               std::uint64_t min_count) {
  if (sentences.empty()) {
    Fail(ErrorCode::kInvalidArgument, "domain statistics need a non-empty corpus");
  }
  std::size_t before = 0;
  for (const auto& s : sentences) before += s.size();
  std::size_t after = 0;
  for (const auto& s : bpe::ApplyAll(bpe, sentences)) after += s.size();

  const auto vocab = BuildVocab(sentences, min_count);
  DomainStats stats;
  stats.sentences = sentences.size();
  const auto n = static_cast<double>(sentences.size());
  stats.avg_len_before = static_cast<double>(before) / n;
  stats.avg_len_after = static_cast<double>(after) / n;
  stats.vocab_size = vocab.size();
  stats.overlap_with_reference = VocabOverlap(vocab, reference_vocab);
  stats.inflation_ratio =
      before == 0 ? 1.0 : static_cast<double>(after) / static_cast<double>(before);
  return stats;
}

}  // namespace domt::corpus
