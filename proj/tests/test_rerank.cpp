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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "domt/error.hpp"
#include "domt/rerank.hpp"
#include "oracles.hpp"

namespace {

using domt::metrics::Metric;
using domt::metrics::MetricKind;
using domt::rerank::Hypothesis;
using domt::rerank::NBestList;
using oracle::S;

NBestList List(const std::vector<std::string>& hyps) {
  NBestList l;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    l.hypotheses.push_back({S(hyps[k]), -static_cast<double>(k), k, "F= 0"});
  }
  return l;
}

std::vector<std::size_t> Order(const NBestList& l, const Metric& m) {
  std::vector<std::size_t> out;
  for (const auto& r : domt::rerank::Rerank(l, m)) out.push_back(r.hypothesis.original_rank);
  return out;
}

std::vector<std::string> Words() {
  return {"the", "a", "cat", "dog", "sat", "ran", "on", "mat", "park", "to@@", "day"};
}

NBestList RandomBeam(std::mt19937_64& rng, std::size_t b) {
  const auto words = Words();
  std::vector<std::string> hyps;
  for (std::size_t k = 0; k < b; ++k) {
    std::string h;
    for (std::size_t n = 1 + rng() % 7; n > 0; --n) h += words[rng() % words.size()] + " ";
    hyps.push_back(h);
  }
  return List(hyps);
}

// Five small edits of one sentence plus one fluent but unrelated sentence at
// a random position.
NBestList HallucinationBeam(std::mt19937_64& rng, std::size_t* disjoint) {
  const std::vector<std::string> base{"the", "doctor", "calls", "the", "pilot", "today"};
  const std::vector<std::string> swaps{"nurse", "judge", "sees", "helps", "tomorrow"};
  std::vector<std::string> hyps;
  for (int k = 0; k < 5; ++k) {
    auto h = base;
    h[rng() % h.size()] = swaps[rng() % swaps.size()];
    std::string line;
    for (const auto& w : h) line += w + " ";
    hyps.push_back(line);
  }
  *disjoint = rng() % 6;
  hyps.insert(hyps.begin() + static_cast<std::ptrdiff_t>(*disjoint),
              "weather in mountains was lovely");
  return List(hyps);
}

TEST(ParseNBest, GroupsByIdAndKeepsFields) {
  std::stringstream in;
  for (int id = 0; id < 2; ++id) {
    for (int k = 0; k < 6; ++k) in << id << " ||| h" << k << " ||| LM= -1 ||| -" << k << "\n";
  }
  const auto lists = domt::rerank::ParseNBest(in, 6);
  ASSERT_EQ(lists.size(), 2u);
  EXPECT_EQ(lists[1].sentence_id, 1u);
  ASSERT_EQ(lists[1].hypotheses.size(), 6u);
  EXPECT_EQ(lists[1].hypotheses[3].original_rank, 3u);
  EXPECT_EQ(lists[1].hypotheses[3].model_score, -3.0);
  EXPECT_EQ(lists[1].hypotheses[3].features, "LM= -1");
}

TEST(ParseNBest, MissingScoreNamesLine) {
  std::stringstream in("0 ||| a ||| F= 1 ||| -1\n0 ||| b ||| F= 1\n");
  try {
    domt::rerank::ParseNBest(in, 6, "list.nbest");
    FAIL();
  } catch (const domt::Error& e) {
    EXPECT_EQ(e.code(), domt::ErrorCode::kFormat);
    EXPECT_NE(std::string(e.what()).find("list.nbest:2"), std::string::npos) << e.what();
  }
}

TEST(ParseNBest, SingleHypothesisAndOversizedGroups) {
  std::stringstream one("0 ||| a ||| F= 1 ||| -1\n");
  EXPECT_EQ(domt::rerank::ParseNBest(one, 6).front().hypotheses.size(), 1u);
  std::stringstream big("0 ||| a ||| F ||| -1\n0 ||| b ||| F ||| -2\n0 ||| c ||| F ||| -3\n");
  EXPECT_THROW(domt::rerank::ParseNBest(big, 2), domt::Error);
  std::stringstream order("1 ||| a ||| F ||| -1\n0 ||| b ||| F ||| -2\n");
  EXPECT_THROW(domt::rerank::ParseNBest(order, 6), domt::Error);
}

TEST(Agreement, IdenticalHypotheses) {
  const auto l = List({"a b c d", "a b c d", "a b c d"});
  const Metric m;
  const double self = m.Similarity(S("a b c d"), S("a b c d"));
  for (double s : domt::rerank::AgreementScores(l, m)) EXPECT_EQ(s, 2 * self);
}

TEST(Agreement, PairIsAsymmetricMetricInBothDirections) {
  const auto l = List({"the cat", "the cat sat on the mat"});
  const Metric m{MetricKind::kChrf};
  const auto s = domt::rerank::AgreementScores(l, m);
  EXPECT_EQ(s[0], m.Similarity(S("the cat"), S("the cat sat on the mat")));
  EXPECT_EQ(s[1], m.Similarity(S("the cat sat on the mat"), S("the cat")));
}

TEST(Agreement, MatchesDoubleLoopForAllMetrics) {
  std::mt19937_64 rng(23);
  for (auto kind : {MetricKind::kSentBleu, MetricKind::kChrf, MetricKind::kTer,
                    MetricKind::kMeteor}) {
    const Metric m{kind};
    for (int trial = 0; trial < 30; ++trial) {
      const auto l = RandomBeam(rng, 1 + rng() % 8);
      EXPECT_EQ(domt::rerank::AgreementScores(l, m), oracle::AgreementDoubleLoop(l, m));
    }
  }
}

TEST(Agreement, ComputedOnJoinedSubwords) {
  const auto l = List({"to@@ day", "today"});
  const auto s = domt::rerank::AgreementScores(l, Metric{MetricKind::kChrf});
  EXPECT_DOUBLE_EQ(s[0], 1.0);
  EXPECT_DOUBLE_EQ(s[1], 1.0);
}

TEST(Rerank, HallucinationRanksLast) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t disjoint = 0;
    const auto l = HallucinationBeam(rng, &disjoint);
    EXPECT_EQ(Order(l, Metric{}).back(), disjoint);
  }
}

TEST(Rerank, TotalTieKeepsInputOrder) {
  const auto l = List({"x y", "x y", "x y", "x y"});
  EXPECT_EQ(Order(l, Metric{}), (std::vector<std::size_t>{0, 1, 2, 3}));
  const auto disjoint = List({"a", "b", "c"});
  EXPECT_EQ(Order(disjoint, Metric{}), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rerank, PermutationEquivariance) {
  std::mt19937_64 rng(31);
  const Metric m;
  for (int trial = 0; trial < 30; ++trial) {
    const auto l = RandomBeam(rng, 6);
    std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    NBestList p;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      auto h = l.hypotheses[perm[k]];
      h.original_rank = k;
      p.hypotheses.push_back(h);
    }
    const auto a = domt::rerank::AgreementScores(l, m);
    const auto b = domt::rerank::AgreementScores(p, m);
    // Summation order follows input order, so equality holds up to rounding.
    for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_NEAR(b[k], a[perm[k]], 1e-12);
  }
}

TEST(Rerank, DuplicateNeverLosesGround) {
  std::mt19937_64 rng(37);
  const Metric m;
  for (int trial = 0; trial < 50; ++trial) {
    const auto l = RandomBeam(rng, 5);
    const std::size_t h = rng() % 5;
    auto position = [](const std::vector<std::size_t>& order, std::size_t id,
                       std::size_t skip) {
      std::size_t pos = 0;
      for (std::size_t r : order) {
        if (r == id) return pos;
        if (r != skip) ++pos;
      }
      return pos;
    };
    const std::size_t before = position(Order(l, m), h, 99);
    auto dup = l;
    dup.hypotheses.push_back(l.hypotheses[h]);
    dup.hypotheses.back().original_rank = 5;
    const std::size_t after = position(Order(dup, m), h, 5);
    EXPECT_LE(after, before) << "trial " << trial;
  }
}

TEST(Rerank, PrefersLongerAmongPrefixBeams) {
  const std::vector<std::string> words{"the", "patient", "was", "given", "a", "dose",
                                       "of", "the", "drug", "today"};
  for (std::size_t shortest = 2; shortest <= 6; ++shortest) {
    for (std::size_t b = 3; b <= 5; ++b) {
      std::vector<std::string> hyps;
      for (std::size_t k = 0; k < b; ++k) {
        std::string h;
        for (std::size_t w = 0; w < shortest + k && w < words.size(); ++w) h += words[w] + " ";
        hyps.push_back(h);
      }
      const auto l = List(hyps);
      const auto top = domt::rerank::Rerank(l, Metric{}).front();
      EXPECT_NE(top.hypothesis.original_rank, 0u) << "shortest=" << shortest << " b=" << b;
    }
  }
}

TEST(SelectTop, PassthroughAndSingletons) {
  std::vector<NBestList> lists{List({"a b@@ c", "x y"}), List({"solo"})};
  lists[1].sentence_id = 1;
  const auto pass = domt::rerank::SelectTop(lists, Metric{},
                                            domt::rerank::Selection::kPassthrough);
  EXPECT_EQ(pass[0].ToLine(), "a bc");
  EXPECT_EQ(pass[1].ToLine(), "solo");
  const auto agree = domt::rerank::SelectTop(lists, Metric{});
  EXPECT_EQ(agree[1].ToLine(), "solo");
}

TEST(SelectTop, HallucinationBeamPicksMajority) {
  std::mt19937_64 rng(41);
  std::size_t disjoint = 0;
  auto l = HallucinationBeam(rng, &disjoint);
  const auto top = domt::rerank::SelectTop(std::vector<NBestList>{l}, Metric{});
  EXPECT_NE(top[0].ToLine(), "weather in mountains was lovely");
}

TEST(SelectTop, RequiresContiguousIds) {
  std::vector<NBestList> lists{List({"a"}), List({"b"})};
  lists[1].sentence_id = 2;
  EXPECT_THROW(domt::rerank::SelectTop(lists, Metric{}), domt::Error);
}

}  // namespace
