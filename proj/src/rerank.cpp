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

#include "domt/rerank.hpp"

#include <algorithm>
#include <fstream>

#include "domt/error.hpp"
#include "text_util.hpp"
#include "utf8.hpp"

namespace domt::rerank {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  constexpr std::string_view kSep = "|||";
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(kSep, start);
    fields.push_back(text::Trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + kSep.size();
  }
  return fields;
}

std::vector<corpus::Sentence> Detokenized(const NBestList& list,
                                          std::string_view marker) {
  std::vector<corpus::Sentence> out;
  out.reserve(list.hypotheses.size());
  for (const auto& h : list.hypotheses) out.push_back(bpe::DeBpe(h.tokens, marker));
  return out;
}

}  // namespace

std::vector<NBestList> ParseNBest(std::istream& in, std::size_t beam,
                                  std::string_view source_name) {
  if (beam < 1) Fail(ErrorCode::kInvalidArgument, "beam must be >= 1");
  std::vector<NBestList> lists;
  std::string line;
  std::size_t line_no = 0;
  auto bad = [&](const std::string& what) {
    Fail(ErrorCode::kFormat, std::string(source_name) + ":" +
                                 std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    if (!utf8::IsValid(line)) bad("invalid UTF-8");
    const auto fields = SplitFields(line);
    if (fields.size() < 4) bad("expected 'id ||| text ||| features ||| score'");
    const auto id = text::ParseInt<std::size_t>(fields[0]);
    if (!id) bad("bad sentence id '" + std::string(fields[0]) + "'");
    const auto score = text::ParseDouble(fields.back());
    if (!score) bad("bad or missing score field");

    if (lists.empty() || lists.back().sentence_id != *id) {
      if (!lists.empty() && *id < lists.back().sentence_id) {
        bad("sentence id " + std::to_string(*id) + " out of order");
      }
      lists.push_back({*id, {}});
    }
    auto& hyps = lists.back().hypotheses;
    if (hyps.size() == beam) {
      bad("more than " + std::to_string(beam) + " hypotheses for sentence " +
          std::to_string(*id));
    }
    Hypothesis h;
    h.tokens = corpus::Sentence::FromLine(fields[1]);
    h.model_score = *score;
    h.original_rank = hyps.size();
    h.features = std::string(fields[2]);
    hyps.push_back(std::move(h));
  }
  return lists;
}

std::vector<NBestList> ReadNBest(const std::filesystem::path& path,
                                 std::size_t beam) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return ParseNBest(in, beam, path.string());
}

std::vector<double> AgreementScores(const NBestList& list,
                                    const metrics::Metric& metric,
                                    std::string_view marker) {
  const auto text = Detokenized(list, marker);
  std::vector<double> scores(text.size(), 0.0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (std::size_t j = 0; j < text.size(); ++j) {
      if (i != j) scores[i] += metric.Similarity(text[i], text[j]);
    }
  }
  return scores;
}

std::vector<RerankedHypothesis> Rerank(const NBestList& list,
                                       const metrics::Metric& metric,
                                       std::string_view marker) {
  const auto scores = AgreementScores(list, metric, marker);
  std::vector<RerankedHypothesis> out;
  out.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out.push_back({list.hypotheses[i], scores[i], 0});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.agreement_score != b.agreement_score) {
      return a.agreement_score > b.agreement_score;
    }
    return a.hypothesis.original_rank < b.hypothesis.original_rank;
  });
  for (std::size_t r = 0; r < out.size(); ++r) out[r].final_rank = r;
  return out;
}

std::vector<corpus::Sentence> SelectTop(std::span<const NBestList> lists,
                                        const metrics::Metric& metric,
                                        Selection selection,
                                        std::string_view marker) {
  std::vector<corpus::Sentence> out;
  out.reserve(lists.size());
  for (std::size_t k = 0; k < lists.size(); ++k) {
    const auto& list = lists[k];
    if (list.sentence_id != k) {
      Fail(ErrorCode::kFormat, "n-best ids not contiguous: expected " +
                                   std::to_string(k) + ", found " +
                                   std::to_string(list.sentence_id));
    }
    if (list.hypotheses.empty()) {
      Fail(ErrorCode::kFormat, "empty n-best list for sentence " + std::to_string(k));
    }
    const Hypothesis* best = &list.hypotheses.front();
    if (selection == Selection::kAgreement && list.hypotheses.size() > 1) {
      const auto ranked = Rerank(list, metric, marker);
      best = &list.hypotheses[ranked.front().hypothesis.original_rank];
    }
    out.push_back(bpe::DeBpe(best->tokens, marker));
  }
  return out;
}

void WriteAnnotated(const std::filesystem::path& path,
                    std::span<const NBestList> lists,
                    const metrics::Metric& metric, std::string_view marker) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& list : lists) {
    for (const auto& r : Rerank(list, metric, marker)) {
      out << list.sentence_id << " ||| " << r.hypothesis.tokens.ToLine() << " ||| "
          << r.hypothesis.features << " ||| "
          << text::FormatRoundTrip(r.hypothesis.model_score) << " ||| "
          << text::FormatRoundTrip(r.agreement_score) << '\n';
    }
  }
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

}  // namespace domt::rerank
