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

#ifndef DOMT_SHORTLIST_HPP_
#define DOMT_SHORTLIST_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "domt/align.hpp"
#include "domt/corpus.hpp"

namespace domt::shortlist {

struct Candidate {
  std::string token;
  double prob = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Ranking used everywhere: probability descending, then token ascending.
bool RanksBefore(const Candidate& a, const Candidate& b);

enum class Direction {
  // Rows of the table are source tokens: rank targets by t(target | source).
  kSourceToTarget,
  // The table was trained target-to-source: its rows are target tokens and
  // it is transposed before ranking.
  kTargetToSource,
};

struct BuildOptions {
  std::size_t k = 10;
  std::size_t frequent_f = 0;
  Direction direction = Direction::kSourceToTarget;
  std::vector<std::string> reserved = {"</s>", "<unk>"};
};

class Shortlist {
 public:
  using Lists = std::map<std::string, std::vector<Candidate>, std::less<>>;

  // Fails with kInvalidArgument when a list is longer than k, out of rank
  // order, or holds a probability outside (0, 1].
  Shortlist(std::size_t k, std::size_t frequent_f,
            std::vector<std::string> always_include, Lists per_source);

  std::size_t k() const { return k_; }
  std::size_t frequent_f() const { return frequent_f_; }
  const std::vector<std::string>& always_include() const { return always_include_; }
  const Lists& per_source() const { return per_source_; }
  const std::vector<Candidate>* Find(std::string_view source) const;

  friend bool operator==(const Shortlist&, const Shortlist&) = default;

 private:
  std::size_t k_;
  std::size_t frequent_f_;
  std::vector<std::string> always_include_;
  Lists per_source_;
};

// Top-k targets per source row plus an always-allowed set made of the
// reserved markers followed by the frequent_f most frequent targets.
Shortlist Build(const align::TranslationTable& table,
                const corpus::Vocabulary& target_counts,
                const BuildOptions& options);

// Always-allowed tokens first, then each known source token's list in
// sentence order; duplicates dropped.
std::vector<std::string> SentenceCandidates(const Shortlist& shortlist,
                                            const corpus::Sentence& source);

struct CoverageReport {
  std::size_t reachable_tokens = 0;
  std::size_t total_tokens = 0;
  double coverage = 0.0;
  // Per pair; a pair with an empty target counts as fully covered.
  std::vector<double> per_sentence;
};

CoverageReport Coverage(const Shortlist& shortlist,
                        const corpus::ParallelCorpus& corpus);

// "#shortlist k=<k> f=<F>", then "#include <token>" per always-allowed
// token, then "source target probability" lines grouped by source.
void Write(const std::filesystem::path& path, const Shortlist& shortlist);
Shortlist Read(const std::filesystem::path& path);

// Bare "source target probability" triples.
void Export(const std::filesystem::path& path, const Shortlist& shortlist);

}  // namespace domt::shortlist

#endif  // DOMT_SHORTLIST_HPP_
