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

#include "domt/bpe.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "domt/error.hpp"
#include "utf8.hpp"

namespace domt::bpe {
namespace {

std::string RuleKey(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back(' ');
  key.append(right);
  return key;
}

std::vector<std::string> Characters(std::string_view word) {
  std::vector<std::string> out;
  for (auto cp : utf8::CodePoints(word)) out.emplace_back(cp);
  return out;
}

// Replaces each non-overlapping left-to-right occurrence of (a, b) by a+b.
template <typename Sym, typename Join>
bool MergeInPlace(std::vector<Sym>& symbols, const Sym& a, const Sym& b,
                  Join join) {
  bool changed = false;
  std::vector<Sym> out;
  out.reserve(symbols.size());
  std::size_t i = 0;
  while (i < symbols.size()) {
    if (i + 1 < symbols.size() && symbols[i] == a && symbols[i + 1] == b) {
      out.push_back(join(a, b));
      i += 2;
      changed = true;
    } else {
      out.push_back(symbols[i]);
      ++i;
    }
  }
  if (changed) symbols.swap(out);
  return changed;
}

// Symbol interning for the learner; pair keys pack two 32-bit ids.
class SymbolTable {
 public:
  std::uint32_t Intern(const std::string& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(s);
    return it->second;
  }
  const std::string& Name(std::uint32_t id) const { return names_[id]; }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
};

using PairKey = std::uint64_t;

PairKey MakePair(std::uint32_t a, std::uint32_t b) {
  return (static_cast<PairKey>(a) << 32) | b;
}
std::uint32_t PairLeft(PairKey p) { return static_cast<std::uint32_t>(p >> 32); }
std::uint32_t PairRight(PairKey p) { return static_cast<std::uint32_t>(p); }

class PairQueue {
 public:
  explicit PairQueue(const SymbolTable& symbols)
      : order_(Compare{&symbols}) {}

  void Add(PairKey pair, std::int64_t delta) {
    auto& count = counts_[pair];
    if (count > 0) order_.erase({count, pair});
    count += delta;
    if (count > 0) order_.insert({count, pair});
  }

  std::optional<PairKey> Best() const {
    if (order_.empty()) return std::nullopt;
    return order_.begin()->second;
  }

 private:
  using Entry = std::pair<std::int64_t, PairKey>;
  struct Compare {
    const SymbolTable* symbols;
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.first != y.first) return x.first > y.first;
      const auto& xl = symbols->Name(PairLeft(x.second));
      const auto& yl = symbols->Name(PairLeft(y.second));
      if (xl != yl) return xl < yl;
      return symbols->Name(PairRight(x.second)) <
             symbols->Name(PairRight(y.second));
    }
  };

  std::unordered_map<PairKey, std::int64_t> counts_;
  std::set<Entry, Compare> order_;
};

}  // namespace

BpeModel::BpeModel(std::vector<MergeRule> merges, std::string marker)
    : merges_(std::move(merges)), marker_(std::move(marker)) {
  if (marker_.empty()) {
    Fail(ErrorCode::kInvalidArgument, "continuation marker must be non-empty");
  }
  rank_.reserve(merges_.size());
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const auto& m = merges_[r];
    if (m.left.empty() || m.right.empty()) {
      Fail(ErrorCode::kInvalidArgument, "merge rule with an empty symbol");
    }
    if (!rank_.emplace(RuleKey(m.left, m.right), r).second) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate merge rule '" + m.left + " " + m.right + "'");
    }
  }
}

std::vector<std::string> BpeModel::SegmentWord(std::string_view word) const {
  auto symbols = Characters(word);
  // Equivalent to sweeping the rule list in order: each step jumps to the
  // lowest-ranked rule above the last one applied that still matches.
  std::optional<std::size_t> last;
  for (;;) {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = rank_.find(RuleKey(symbols[i], symbols[i + 1]));
      if (it == rank_.end()) continue;
      if (last && it->second <= *last) continue;
      if (!next || it->second < *next) next = it->second;
    }
    if (!next) break;
    const auto& rule = merges_[*next];
    MergeInPlace(symbols, rule.left, rule.right,
                 [](const std::string& a, const std::string& b) { return a + b; });
    last = next;
  }
  return symbols;
}

corpus::Sentence BpeModel::Apply(const corpus::Sentence& sentence) const {
  corpus::Sentence out;
  for (const auto& word : sentence.tokens) {
    auto pieces = SegmentWord(word);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i + 1 < pieces.size()) pieces[i] += marker_;
      out.tokens.push_back(std::move(pieces[i]));
    }
  }
  return out;
}

std::vector<corpus::Sentence> ApplyAll(
    const BpeModel& model, std::span<const corpus::Sentence> sentences) {
  std::unordered_map<std::string, std::vector<std::string>> cache;
  std::vector<corpus::Sentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    corpus::Sentence seg;
    for (const auto& word : s.tokens) {
      auto it = cache.find(word);
      if (it == cache.end()) {
        auto pieces = model.SegmentWord(word);
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
          pieces[i] += model.continuation_marker();
        }
        it = cache.emplace(word, std::move(pieces)).first;
      }
      seg.tokens.insert(seg.tokens.end(), it->second.begin(), it->second.end());
    }
    out.push_back(std::move(seg));
  }
  return out;
}

BpeModel Learn(std::span<const corpus::Sentence> sentences,
               std::size_t num_merges, std::string marker) {
  std::map<std::string, std::int64_t> word_counts;
  for (const auto& s : sentences) {
    for (const auto& w : s.tokens) ++word_counts[w];
  }
  if (word_counts.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot learn BPE from an empty corpus");
  }

  SymbolTable symbols;
  std::vector<std::vector<std::uint32_t>> words;
  std::vector<std::int64_t> freq;
  for (const auto& [w, c] : word_counts) {
    std::vector<std::uint32_t> ids;
    for (auto& ch : Characters(w)) ids.push_back(symbols.Intern(ch));
    words.push_back(std::move(ids));
    freq.push_back(c);
  }

  PairQueue queue(symbols);
  std::unordered_map<PairKey, std::unordered_set<std::size_t>> where;
  auto add_word = [&](std::size_t w, std::int64_t sign) {
    const auto& ids = words[w];
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      const PairKey p = MakePair(ids[i], ids[i + 1]);
      queue.Add(p, sign * freq[w]);
      if (sign > 0) where[p].insert(w);
    }
  };
  for (std::size_t w = 0; w < words.size(); ++w) add_word(w, +1);

  std::vector<MergeRule> merges;
  merges.reserve(num_merges);
  while (merges.size() < num_merges) {
    const auto best = queue.Best();
    if (!best) break;
    const std::uint32_t a = PairLeft(*best);
    const std::uint32_t b = PairRight(*best);
    const std::uint32_t joined = symbols.Intern(symbols.Name(a) + symbols.Name(b));
    merges.push_back({symbols.Name(a), symbols.Name(b)});

    // Copy: add_word() inserts into `where` and may rehash it.
    const auto affected = where[*best];
    for (std::size_t w : affected) {
      auto trial = words[w];
      if (!MergeInPlace(trial, a, b,
                        [joined](std::uint32_t, std::uint32_t) { return joined; })) {
        continue;
      }
      add_word(w, -1);
      words[w] = std::move(trial);
      add_word(w, +1);
    }
    where.erase(*best);
  }
  return BpeModel(std::move(merges), std::move(marker));
}

corpus::Sentence DeBpe(const corpus::Sentence& sentence,
                       std::string_view marker) {
  corpus::Sentence out;
  std::string pending;
  bool open = false;
  for (const auto& tok : sentence.tokens) {
    if (!marker.empty() && tok.size() >= marker.size() &&
        std::string_view(tok).substr(tok.size() - marker.size()) == marker) {
      pending.append(tok, 0, tok.size() - marker.size());
      open = true;
    } else {
      pending += tok;
      out.tokens.push_back(std::move(pending));
      pending.clear();
      open = false;
    }
  }
  if (open && !pending.empty()) out.tokens.push_back(std::move(pending));
  return out;
}

BpeModel ReadModel(const std::filesystem::path& path, std::string marker) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "#version: 1") {
    Fail(ErrorCode::kFormat,
         path.string() + ":1: expected BPE header '#version: 1'");
  }
  std::vector<MergeRule> merges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto s = corpus::Sentence::FromLine(line);
    if (s.size() != 2) {
      Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": expected 'left right'");
    }
    merges.push_back({s.tokens[0], s.tokens[1]});
  }
  try {
    return BpeModel(std::move(merges), std::move(marker));
  } catch (const Error& e) {
    Fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void WriteModel(const std::filesystem::path& path, const BpeModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << "#version: 1\n";
  for (const auto& m : model.merges()) out << m.left << ' ' << m.right << '\n';
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

}  // namespace domt::bpe
