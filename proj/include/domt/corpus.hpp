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

#ifndef DOMT_CORPUS_HPP_
#define DOMT_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace domt::corpus {

// A whitespace-tokenized sentence. Tokens are non-empty and never contain
// whitespace; a blank line is a sentence with zero tokens.
struct Sentence {
  std::vector<std::string> tokens;

  Sentence() = default;
  explicit Sentence(std::vector<std::string> toks) : tokens(std::move(toks)) {}

  static Sentence FromLine(std::string_view line);
  std::string ToLine() const;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SentencePair {
  Sentence source;
  Sentence target;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

// Reads one sentence per line. Fails with kIo if the file cannot be opened
// and with kFormat (naming the 1-based line) on invalid UTF-8.
std::vector<Sentence> ReadSentences(const std::filesystem::path& path);
void WriteSentences(const std::filesystem::path& path,
                    std::span<const Sentence> sentences);

// Zips two line-aligned files. A line-count mismatch is a kFormat error whose
// message reads "length mismatch <source lines> vs <target lines>".
ParallelCorpus LoadParallel(const std::filesystem::path& source_path,
                            const std::filesystem::path& target_path);

ParallelCorpus Zip(std::vector<Sentence> source, std::vector<Sentence> target);

// Deterministic down-sampling: keeps round(fraction * n) sentences chosen by a
// partial Fisher-Yates shuffle seeded with `seed`, returned in corpus order.
std::vector<Sentence> Sample(std::span<const Sentence> sentences,
                             double fraction, std::uint64_t seed);

class Vocabulary {
 public:
  using Map = std::map<std::string, std::uint64_t, std::less<>>;

  Vocabulary() = default;
  Vocabulary(Map entries, std::uint64_t min_count)
      : entries_(std::move(entries)), min_count_(min_count) {}

  const Map& entries() const { return entries_; }
  std::uint64_t min_count() const { return min_count_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view token) const {
    return entries_.find(token) != entries_.end();
  }
  std::uint64_t count(std::string_view token) const;

 private:
  Map entries_;
  std::uint64_t min_count_ = 1;
};

// Keeps tokens whose count is >= min_count. A "seen more than 20 times"
// threshold is min_count = 21.
Vocabulary BuildVocab(std::span<const Sentence> sentences,
                      std::uint64_t min_count);

std::size_t VocabOverlap(const Vocabulary& a, const Vocabulary& b);

// All source sides, or all target sides, of a corpus.
std::vector<Sentence> SourceSide(const ParallelCorpus& corpus);
std::vector<Sentence> TargetSide(const ParallelCorpus& corpus);

}  // namespace domt::corpus

#endif  // DOMT_CORPUS_HPP_
