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

#include "domt/shortlist.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "domt/error.hpp"
#include "text_util.hpp"

namespace domt::shortlist {

bool RanksBefore(const Candidate& a, const Candidate& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  return a.token < b.token;
}

Shortlist::Shortlist(std::size_t k, std::size_t frequent_f,
                     std::vector<std::string> always_include, Lists per_source)
    : k_(k),
      frequent_f_(frequent_f),
      always_include_(std::move(always_include)),
      per_source_(std::move(per_source)) {
  if (k_ < 1) Fail(ErrorCode::kInvalidArgument, "shortlist size k must be >= 1");
  for (const auto& [src, list] : per_source_) {
    if (list.size() > k_) {
      Fail(ErrorCode::kInvalidArgument, "list for '" + src + "' longer than k");
    }
    for (std::size_t r = 0; r < list.size(); ++r) {
      if (!(list[r].prob > 0.0 && list[r].prob <= 1.0)) {
        Fail(ErrorCode::kInvalidArgument,
             "probability outside (0, 1] for '" + src + "'");
      }
      if (r > 0 && !RanksBefore(list[r - 1], list[r])) {
        Fail(ErrorCode::kInvalidArgument, "list for '" + src + "' not in rank order");
      }
    }
  }
}

const std::vector<Candidate>* Shortlist::Find(std::string_view source) const {
  auto it = per_source_.find(source);
  return it == per_source_.end() ? nullptr : &it->second;
}

Shortlist Build(const align::TranslationTable& table,
                const corpus::Vocabulary& target_counts,
                const BuildOptions& options) {
  if (options.k < 1) Fail(ErrorCode::kInvalidArgument, "shortlist size k must be >= 1");
  const align::TranslationTable transposed =
      options.direction == Direction::kTargetToSource ? table.Transposed()
                                                      : align::TranslationTable();
  const auto& rows = options.direction == Direction::kTargetToSource
                         ? transposed.rows()
                         : table.rows();

  Shortlist::Lists lists;
  for (const auto& [src, row] : rows) {
    if (src == align::kNullToken) continue;
    std::vector<Candidate> cands;
    for (const auto& [tgt, p] : row) {
      if (p > 0.0) cands.push_back({tgt, p});
    }
    if (cands.empty()) continue;
    const std::size_t keep = std::min(options.k, cands.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep),
                      cands.end(), RanksBefore);
    cands.resize(keep);
    lists.emplace(src, std::move(cands));
  }

  std::vector<std::string> always;
  std::unordered_set<std::string> seen;
  for (const auto& tok : options.reserved) {
    if (seen.insert(tok).second) always.push_back(tok);
  }
  std::vector<std::pair<std::string, std::uint64_t>> frequent(
      target_counts.entries().begin(), target_counts.entries().end());
  std::stable_sort(frequent.begin(), frequent.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t i = 0; i < std::min(options.frequent_f, frequent.size()); ++i) {
    if (seen.insert(frequent[i].first).second) always.push_back(frequent[i].first);
  }
  return Shortlist(options.k, options.frequent_f, std::move(always), std::move(lists));
}

std::vector<std::string> SentenceCandidates(const Shortlist& shortlist,
                                            const corpus::Sentence& source) {
  std::vector<std::string> out;
  std::unordered_set<std::string_view> seen;
  auto add = [&](const std::string& tok) {
    if (seen.insert(tok).second) out.push_back(tok);
  };
  for (const auto& tok : shortlist.always_include()) add(tok);
  for (const auto& src : source.tokens) {
    if (const auto* list = shortlist.Find(src)) {
      for (const auto& c : *list) add(c.token);
    }
  }
  return out;
}

CoverageReport Coverage(const Shortlist& shortlist,
                        const corpus::ParallelCorpus& corpus) {
  if (corpus.empty()) {
    Fail(ErrorCode::kInvalidArgument, "coverage needs a non-empty corpus");
  }
  CoverageReport report;
  report.per_sentence.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) {
    const auto cands = SentenceCandidates(shortlist, pair.source);
    const std::unordered_set<std::string_view> allowed(cands.begin(), cands.end());
    std::size_t hit = 0;
    for (const auto& tok : pair.target.tokens) {
      if (allowed.count(tok) != 0) ++hit;
    }
    report.reachable_tokens += hit;
    report.total_tokens += pair.target.size();
    report.per_sentence.push_back(
        pair.target.empty() ? 1.0
                            : static_cast<double>(hit) /
                                  static_cast<double>(pair.target.size()));
  }
  report.coverage = report.total_tokens == 0
                        ? 1.0
                        : static_cast<double>(report.reachable_tokens) /
                              static_cast<double>(report.total_tokens);
  return report;
}

namespace {

void WriteTriples(std::ofstream& out, const Shortlist& shortlist) {
  for (const auto& [src, list] : shortlist.per_source()) {
    for (const auto& c : list) {
      out << src << ' ' << c.token << ' ' << text::FormatRoundTrip(c.prob) << '\n';
    }
  }
}

[[noreturn]] void BadLine(const std::filesystem::path& path, std::size_t line_no,
                          const std::string& what) {
  Fail(ErrorCode::kFormat,
       path.string() + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

void Write(const std::filesystem::path& path, const Shortlist& shortlist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << "#shortlist k=" << shortlist.k() << " f=" << shortlist.frequent_f() << '\n';
  for (const auto& tok : shortlist.always_include()) out << "#include " << tok << '\n';
  WriteTriples(out, shortlist);
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

void Export(const std::filesystem::path& path, const Shortlist& shortlist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  WriteTriples(out, shortlist);
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

Shortlist Read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) BadLine(path, 1, "missing shortlist header");
  const auto header = corpus::Sentence::FromLine(line);
  if (header.size() != 3 || header.tokens[0] != "#shortlist" ||
      header.tokens[1].rfind("k=", 0) != 0 || header.tokens[2].rfind("f=", 0) != 0) {
    BadLine(path, 1, "expected '#shortlist k=<k> f=<F>'");
  }
  const auto k = text::ParseInt<std::size_t>(std::string_view(header.tokens[1]).substr(2));
  const auto f = text::ParseInt<std::size_t>(std::string_view(header.tokens[2]).substr(2));
  if (!k || !f) BadLine(path, 1, "bad k or f value");

  std::vector<std::string> always;
  Shortlist::Lists lists;
  std::size_t line_no = 1;
  std::string previous_source;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = corpus::Sentence::FromLine(line);
    if (s.empty()) continue;
    if (s.tokens[0] == "#include") {
      if (s.size() != 2) BadLine(path, line_no, "expected '#include <token>'");
      always.push_back(s.tokens[1]);
      continue;
    }
    if (s.size() != 3) BadLine(path, line_no, "expected 'source target probability'");
    const auto p = text::ParseDouble(s.tokens[2]);
    if (!p) BadLine(path, line_no, "bad probability");
    auto& list = lists[s.tokens[0]];
    if (!list.empty() && s.tokens[0] != previous_source) {
      BadLine(path, line_no, "entries for '" + s.tokens[0] + "' are not grouped");
    }
    previous_source = s.tokens[0];
    list.push_back({s.tokens[1], *p});
  }
  try {
    return Shortlist(*k, *f, std::move(always), std::move(lists));
  } catch (const Error& e) {
    Fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

}  // namespace domt::shortlist
