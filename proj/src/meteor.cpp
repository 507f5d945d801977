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

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "domt/metrics.hpp"

namespace domt::metrics {
namespace {

constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max() / 2;
// States explored before falling back to the greedy alignment.
constexpr std::size_t kStateBudget = 200000;

// Memoized search over hypothesis positions. A state is the next hypothesis
// position, the reference position linked to the previous hypothesis word
// (if any) and the set of reference positions already used.
class ChunkSearch {
 public:
  ChunkSearch(const Sentence& hyp, const Sentence& ref) {
    std::unordered_map<std::string_view, int> ids;
    auto id_of = [&](std::string_view tok) {
      return ids.try_emplace(tok, static_cast<int>(ids.size())).first->second;
    };
    for (const auto& t : ref.tokens) ref_.push_back(id_of(t));
    for (const auto& t : hyp.tokens) {
      auto it = ids.find(t);
      hyp_.push_back(it == ids.end() ? -1 : it->second);
    }
    words_ = ids.size();
    ref_count_.assign(words_, 0);
    for (int w : ref_) ++ref_count_[w];
    suffix_.assign(hyp_.size() + 1, std::vector<std::size_t>(words_, 0));
    for (std::size_t i = hyp_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      if (hyp_[i] >= 0) ++suffix_[i][hyp_[i]];
    }
    for (std::size_t w = 0; w < words_; ++w) {
      target_matches_ += std::min(suffix_[0][w], ref_count_[w]);
    }
  }

  std::size_t max_matches() const { return target_matches_; }

  // Minimum chunk count over maximum matchings; nullopt past the budget.
  std::optional<std::size_t> Solve() {
    used_.assign(ref_.size(), false);
    const std::size_t best = Visit(0, -1, 0);
    if (over_budget_) return std::nullopt;
    return best;
  }

  std::size_t Greedy() const {
    std::vector<bool> used(ref_.size(), false);
    std::size_t chunks = 0;
    long prev = -1;
    for (std::size_t i = 0; i < hyp_.size(); ++i) {
      long pick = -1;
      if (hyp_[i] >= 0) {
        const auto next = static_cast<std::size_t>(prev + 1);
        if (prev >= 0 && next < ref_.size() && !used[next] && ref_[next] == hyp_[i]) {
          pick = prev + 1;
        } else {
          for (std::size_t j = 0; j < ref_.size(); ++j) {
            if (!used[j] && ref_[j] == hyp_[i]) {
              pick = static_cast<long>(j);
              break;
            }
          }
        }
      }
      if (pick >= 0) {
        if (prev < 0 || pick != prev + 1) ++chunks;
        used[static_cast<std::size_t>(pick)] = true;
      }
      prev = pick;
    }
    return chunks;
  }

 private:
  std::size_t Potential(std::size_t i) const {
    std::vector<std::size_t> free = ref_count_;
    for (std::size_t j = 0; j < ref_.size(); ++j) {
      if (used_[j]) --free[ref_[j]];
    }
    std::size_t p = 0;
    for (std::size_t w = 0; w < words_; ++w) p += std::min(suffix_[i][w], free[w]);
    return p;
  }

  std::string Key(std::size_t i, long prev) const {
    std::string key = std::to_string(i) + ':' + std::to_string(prev) + ':';
    for (bool u : used_) key.push_back(u ? '1' : '0');
    return key;
  }

  std::size_t Visit(std::size_t i, long prev, std::size_t matched) {
    if (i == hyp_.size()) return matched == target_matches_ ? 0 : kInfeasible;
    if (matched + Potential(i) < target_matches_) return kInfeasible;
    const std::string key = Key(i, prev);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= kStateBudget) {
      over_budget_ = true;
      return kInfeasible;
    }

    std::size_t best = Visit(i + 1, -1, matched);
    if (hyp_[i] >= 0) {
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (used_[j] || ref_[j] != hyp_[i]) continue;
        const std::size_t cost =
            (prev >= 0 && static_cast<long>(j) == prev + 1) ? 0 : 1;
        used_[j] = true;
        const std::size_t rest = Visit(i + 1, static_cast<long>(j), matched + 1);
        used_[j] = false;
        if (rest < kInfeasible) best = std::min(best, cost + rest);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  std::vector<int> hyp_;
  std::vector<int> ref_;
  std::size_t words_ = 0;
  std::vector<std::size_t> ref_count_;
  std::vector<std::vector<std::size_t>> suffix_;
  std::size_t target_matches_ = 0;
  std::vector<bool> used_;
  std::unordered_map<std::string, std::size_t> memo_;
  bool over_budget_ = false;
};

}  // namespace

MeteorAlignment MeteorAlign(const Sentence& hyp, const Sentence& ref) {
  ChunkSearch search(hyp, ref);
  MeteorAlignment out;
  out.matches = search.max_matches();
  if (out.matches == 0) return out;
  // FIXME: the greedy fallback can overcount chunks on very long, highly
  // repetitive sentence pairs; a DP over chunk boundaries would be exact.
  const auto exact = search.Solve();
  out.chunks = exact ? *exact : search.Greedy();
  return out;
}

}  // namespace domt::metrics
