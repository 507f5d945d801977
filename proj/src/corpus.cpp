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

#include "domt/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "domt/error.hpp"
#include "utf8.hpp"

namespace domt::corpus {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

}  // namespace

Sentence Sentence::FromLine(std::string_view line) {
  Sentence s;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && IsSpace(line[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !IsSpace(line[pos])) ++pos;
    if (pos > start) s.tokens.emplace_back(line.substr(start, pos - start));
  }
  return s;
}

std::string Sentence::ToLine() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<Sentence> ReadSentences(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Sentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!utf8::IsValid(line)) {
      Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": invalid UTF-8");
    }
    out.push_back(Sentence::FromLine(line));
  }
  if (in.bad()) Fail(ErrorCode::kIo, "read error on " + path.string());
  return out;
}

void WriteSentences(const std::filesystem::path& path,
                    std::span<const Sentence> sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& s : sentences) out << s.ToLine() << '\n';
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

ParallelCorpus Zip(std::vector<Sentence> source, std::vector<Sentence> target) {
  if (source.size() != target.size()) {
    Fail(ErrorCode::kFormat, "length mismatch " +
                                 std::to_string(source.size()) + " vs " +
                                 std::to_string(target.size()));
  }
  ParallelCorpus corpus;
  corpus.pairs.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    corpus.pairs.push_back({std::move(source[i]), std::move(target[i])});
  }
  return corpus;
}

ParallelCorpus LoadParallel(const std::filesystem::path& source_path,
                            const std::filesystem::path& target_path) {
  return Zip(ReadSentences(source_path), ReadSentences(target_path));
}

std::vector<Sentence> Sample(std::span<const Sentence> sentences,
                             double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "sample fraction must be in [0, 1]");
  }
  const std::size_t n = sentences.size();
  const auto keep = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  std::vector<std::size_t> index(n);
  std::iota(index.begin(), index.end(), std::size_t{0});
  // mt19937_64 output is fixed by the standard; distributions are not, so the
  // draw is reduced by hand to stay identical across standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(index[i], index[j]);
  }
  index.resize(keep);
  std::sort(index.begin(), index.end());
  std::vector<Sentence> out;
  out.reserve(keep);
  for (std::size_t i : index) out.push_back(sentences[i]);
  return out;
}

std::uint64_t Vocabulary::count(std::string_view token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? 0 : it->second;
}

Vocabulary BuildVocab(std::span<const Sentence> sentences,
                      std::uint64_t min_count) {
  if (min_count < 1) Fail(ErrorCode::kInvalidArgument, "min_count must be >= 1");
  Vocabulary::Map counts;
  for (const auto& s : sentences) {
    for (const auto& tok : s.tokens) {
      auto it = counts.find(tok);
      if (it == counts.end()) {
        counts.emplace(tok, 1);
      } else {
        ++it->second;
      }
    }
  }
  std::erase_if(counts, [&](const auto& kv) { return kv.second < min_count; });
  return Vocabulary(std::move(counts), min_count);
}

std::size_t VocabOverlap(const Vocabulary& a, const Vocabulary& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (const auto& [tok, count] : small.entries()) {
    if (large.contains(tok)) ++n;
  }
  return n;
}

std::vector<Sentence> SourceSide(const ParallelCorpus& corpus) {
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus.pairs) out.push_back(p.source);
  return out;
}

std::vector<Sentence> TargetSide(const ParallelCorpus& corpus) {
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus.pairs) out.push_back(p.target);
  return out;
}

}  // namespace domt::corpus
