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

#ifndef DOMT_BPE_HPP_
#define DOMT_BPE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "domt/corpus.hpp"

namespace domt::bpe {

inline constexpr std::string_view kDefaultMarker = "@@";

struct MergeRule {
  std::string left;
  std::string right;

  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

// An ordered list of merge rules. Words are split into UTF-8 characters and
// the rules are applied in list order; every sub-token of a word except the
// last carries the continuation marker.
class BpeModel {
 public:
  BpeModel() : BpeModel(std::vector<MergeRule>{}) {}
  explicit BpeModel(std::vector<MergeRule> merges,
                    std::string marker = std::string(kDefaultMarker));

  const std::vector<MergeRule>& merges() const { return merges_; }
  const std::string& continuation_marker() const { return marker_; }

  // Subword units of a single word, without markers.
  std::vector<std::string> SegmentWord(std::string_view word) const;

  corpus::Sentence Apply(const corpus::Sentence& sentence) const;

 private:
  std::vector<MergeRule> merges_;
  std::string marker_;
  std::unordered_map<std::string, std::size_t> rank_;
};

// Greedy most-frequent-pair learning over word types. Pairs never span a
// word boundary. Equal counts resolve to the lexicographically smallest
// (left, right). Stops early once no adjacent pair remains.
BpeModel Learn(std::span<const corpus::Sentence> sentences,
               std::size_t num_merges,
               std::string marker = std::string(kDefaultMarker));

std::vector<corpus::Sentence> ApplyAll(
    const BpeModel& model, std::span<const corpus::Sentence> sentences);

// Joins every token ending in `marker` with its successor. A marker on the
// final token is stripped and the token kept.
corpus::Sentence DeBpe(const corpus::Sentence& sentence,
                       std::string_view marker = kDefaultMarker);

// Text format: "#version: 1" then one "left right" rule per line.
BpeModel ReadModel(const std::filesystem::path& path,
                   std::string marker = std::string(kDefaultMarker));
void WriteModel(const std::filesystem::path& path, const BpeModel& model);

}  // namespace domt::bpe

#endif  // DOMT_BPE_HPP_
