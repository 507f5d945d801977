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

#include "domt/align.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "domt/error.hpp"

namespace domt::align {
namespace {

constexpr std::uint32_t kNullId = 0;

struct PriorSpec {
  ModelType type;
  double null_prob;
  double tension;
};

// Writes the prior over {empty word, 1..n} into out[0..n] and returns the
// expected diagonal feature under the normalized source-word weights.
double FillPrior(const PriorSpec& spec, std::size_t i, std::size_t m,
                 std::size_t n, std::span<double> out) {
  if (n == 0) {
    out[0] = 1.0;
    return 0.0;
  }
  if (spec.type == ModelType::kIbm1) {
    const double u = 1.0 / static_cast<double>(n + 1);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n + 1), u);
    return 0.0;
  }
  double z = 0.0;
  double zh = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double h = DiagonalFeature(i, m, j, n);
    const double w = std::exp(spec.tension * h);
    out[j] = w;
    z += w;
    zh += w * h;
  }
  out[0] = spec.null_prob;
  const double scale = (1.0 - spec.null_prob) / z;
  for (std::size_t j = 1; j <= n; ++j) out[j] *= scale;
  return zh / z;
}

// Token ids by first appearance; source id 0 is the empty word.
struct EncodedCorpus {
  std::vector<std::string> source_names{std::string(kNullToken)};
  std::vector<std::string> target_names;
  std::vector<std::vector<std::uint32_t>> source;
  std::vector<std::vector<std::uint32_t>> target;
  std::size_t target_tokens = 0;
};

EncodedCorpus Encode(const corpus::ParallelCorpus& corpus) {
  EncodedCorpus enc;
  std::unordered_map<std::string, std::uint32_t> src_ids;
  std::unordered_map<std::string, std::uint32_t> tgt_ids;
  auto intern = [](auto& ids, auto& names, const std::string& tok) {
    auto [it, inserted] =
        ids.try_emplace(tok, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(tok);
    return it->second;
  };
  enc.source.reserve(corpus.size());
  enc.target.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) {
    std::vector<std::uint32_t> s;
    std::vector<std::uint32_t> t;
    for (const auto& tok : pair.source.tokens) {
      s.push_back(intern(src_ids, enc.source_names, tok));
    }
    for (const auto& tok : pair.target.tokens) {
      t.push_back(intern(tgt_ids, enc.target_names, tok));
    }
    enc.target_tokens += t.size();
    enc.source.push_back(std::move(s));
    enc.target.push_back(std::move(t));
  }
  return enc;
}

// One slot per co-occurring (source, target) pair, empty word included.
struct ParamIndex {
  std::unordered_map<std::uint64_t, std::uint32_t> slot_of;
  std::vector<std::uint32_t> row;
  std::vector<std::uint32_t> col;

  static std::uint64_t Key(std::uint32_t f, std::uint32_t e) {
    return (static_cast<std::uint64_t>(f) << 32) | e;
  }
  std::uint32_t Slot(std::uint32_t f, std::uint32_t e) const {
    return slot_of.find(Key(f, e))->second;
  }
  std::size_t size() const { return row.size(); }
};

ParamIndex IndexParams(const EncodedCorpus& enc) {
  ParamIndex idx;
  auto add = [&](std::uint32_t f, std::uint32_t e) {
    auto [it, inserted] = idx.slot_of.try_emplace(
        ParamIndex::Key(f, e), static_cast<std::uint32_t>(idx.row.size()));
    if (inserted) {
      idx.row.push_back(f);
      idx.col.push_back(e);
    }
  };
  for (std::size_t k = 0; k < enc.source.size(); ++k) {
    for (std::uint32_t e : enc.target[k]) {
      add(kNullId, e);
      for (std::uint32_t f : enc.source[k]) add(f, e);
    }
  }
  return idx;
}

struct EStepResult {
  std::vector<double> counts;
  double log_likelihood = 0.0;
  double empirical_feature = 0.0;
  double model_feature = 0.0;
  double complete_log_likelihood = 0.0;
};

// Posteriors are normalized per target position, so the likelihood is
// accumulated as a sum of per-position logs and cannot underflow.
EStepResult RunEStep(const EncodedCorpus& enc, const ParamIndex& idx,
                     const std::vector<double>& prob, const PriorSpec& spec,
                     bool want_counts, std::optional<double> eval_tension) {
  EStepResult res;
  if (want_counts) res.counts.assign(idx.size(), 0.0);
  std::vector<double> prior;
  std::vector<double> eval_prior;
  std::vector<double> weight;
  std::vector<std::uint32_t> slots;
  const PriorSpec eval_spec{spec.type, spec.null_prob,
                            eval_tension.value_or(spec.tension)};

  for (std::size_t k = 0; k < enc.source.size(); ++k) {
    const auto& src = enc.source[k];
    const auto& tgt = enc.target[k];
    const std::size_t n = src.size();
    const std::size_t m = tgt.size();
    prior.resize(n + 1);
    eval_prior.resize(n + 1);
    weight.resize(n + 1);
    slots.resize(n + 1);
    for (std::size_t i = 1; i <= m; ++i) {
      const std::uint32_t e = tgt[i - 1];
      const double expected_h = FillPrior(spec, i, m, n, prior);
      double marginal = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        slots[j] = idx.Slot(j == 0 ? kNullId : src[j - 1], e);
        weight[j] = prior[j] * prob[slots[j]];
        marginal += weight[j];
      }
      res.log_likelihood += std::log(marginal);
      if (!(marginal > 0.0)) continue;
      for (std::size_t j = 0; j <= n; ++j) weight[j] /= marginal;

      if (want_counts) {
        for (std::size_t j = 0; j <= n; ++j) res.counts[slots[j]] += weight[j];
      }
      if (spec.type == ModelType::kDiagonal && n > 0) {
        double aligned = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
          res.empirical_feature += weight[j] * DiagonalFeature(i, m, j, n);
          aligned += weight[j];
        }
        res.model_feature += aligned * expected_h;
      }
      if (eval_tension) {
        FillPrior(eval_spec, i, m, n, eval_prior);
        for (std::size_t j = 0; j <= n; ++j) {
          if (weight[j] > 0.0) {
            res.complete_log_likelihood +=
                weight[j] * (std::log(eval_prior[j]) + std::log(prob[slots[j]]));
          }
        }
      }
    }
  }
  return res;
}

TranslationTable ToTable(const EncodedCorpus& enc, const ParamIndex& idx,
                         const std::vector<double>& values) {
  TranslationTable::Rows rows;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    rows[enc.source_names[idx.row[s]]][enc.target_names[idx.col[s]]] = values[s];
  }
  return TranslationTable(std::move(rows));
}

// Parameters of an existing model gathered onto the corpus' slots.
std::vector<double> GatherModelParams(const AlignmentModel& model,
                                      const EncodedCorpus& enc,
                                      const ParamIndex& idx,
                                      const InferenceOptions& options) {
  const auto& table = model.ttable();
  if (options.unseen == UnseenPolicy::kError) {
    for (std::size_t f = 1; f < enc.source_names.size(); ++f) {
      if (!table.HasSource(enc.source_names[f])) {
        Fail(ErrorCode::kInvalidArgument,
             "source token '" + enc.source_names[f] + "' unseen by the model");
      }
    }
    for (const auto& e : enc.target_names) {
      if (!table.HasTarget(e)) {
        Fail(ErrorCode::kInvalidArgument,
             "target token '" + e + "' unseen by the model");
      }
    }
  }
  const double missing =
      options.unseen == UnseenPolicy::kFloor ? options.floor : 0.0;
  std::vector<const TranslationTable::Row*> rows(enc.source_names.size());
  for (std::size_t f = 0; f < rows.size(); ++f) {
    rows[f] = table.FindRow(enc.source_names[f]);
  }
  std::vector<double> prob(idx.size(), missing);
  for (std::size_t s = 0; s < idx.size(); ++s) {
    const auto* row = rows[idx.row[s]];
    if (row == nullptr) continue;
    auto it = row->find(enc.target_names[idx.col[s]]);
    if (it != row->end()) prob[s] = it->second;
  }
  return prob;
}

PriorSpec SpecOf(const AlignmentModel& model) {
  return {model.type(), model.null_prob(), model.tension()};
}

EStepResult EStepAtModel(const AlignmentModel& model,
                         const corpus::ParallelCorpus& corpus,
                         const InferenceOptions& options, bool want_counts,
                         std::optional<double> eval_tension,
                         EncodedCorpus* enc_out = nullptr,
                         ParamIndex* idx_out = nullptr) {
  EncodedCorpus enc = Encode(corpus);
  ParamIndex idx = IndexParams(enc);
  const auto prob = GatherModelParams(model, enc, idx, options);
  auto res = RunEStep(enc, idx, prob, SpecOf(model), want_counts, eval_tension);
  if (enc_out) *enc_out = std::move(enc);
  if (idx_out) *idx_out = std::move(idx);
  return res;
}

}  // namespace

// -- TranslationTable -------------------------------------------------------

TranslationTable::TranslationTable(Rows rows) : rows_(std::move(rows)) {
  for (const auto& [src, row] : rows_) {
    for (const auto& [tgt, p] : row) targets_.insert(tgt);
  }
}

void TranslationTable::Set(std::string_view source, std::string_view target,
                           double prob) {
  auto row_it = rows_.find(source);
  if (row_it == rows_.end()) row_it = rows_.emplace(std::string(source), Row{}).first;
  auto& row = row_it->second;
  auto it = row.find(target);
  if (it == row.end()) {
    row.emplace(std::string(target), prob);
  } else {
    it->second = prob;
  }
  if (!HasTarget(target)) targets_.emplace(target);
}

std::optional<double> TranslationTable::Find(std::string_view source,
                                             std::string_view target) const {
  const Row* row = FindRow(source);
  if (row == nullptr) return std::nullopt;
  auto it = row->find(target);
  if (it == row->end()) return std::nullopt;
  return it->second;
}

const TranslationTable::Row* TranslationTable::FindRow(
    std::string_view source) const {
  auto it = rows_.find(source);
  return it == rows_.end() ? nullptr : &it->second;
}

double TranslationTable::MaxNormalizationError() const {
  double worst = 0.0;
  for (const auto& [src, row] : rows_) {
    double sum = 0.0;
    for (const auto& [tgt, p] : row) sum += p;
    worst = std::max(worst, std::abs(1.0 - sum));
  }
  return worst;
}

TranslationTable TranslationTable::Transposed() const {
  Rows out;
  for (const auto& [src, row] : rows_) {
    if (src == kNullToken) continue;
    for (const auto& [tgt, p] : row) out[tgt][src] = p;
  }
  return TranslationTable(std::move(out));
}

// -- Model ------------------------------------------------------------------

std::string_view ModelTypeName(ModelType type) {
  return type == ModelType::kIbm1 ? "ibm1" : "diagonal";
}

ModelType ParseModelType(std::string_view name) {
  if (name == "ibm1") return ModelType::kIbm1;
  if (name == "diagonal") return ModelType::kDiagonal;
  Fail(ErrorCode::kInvalidArgument,
       "unknown model type '" + std::string(name) + "' (ibm1|diagonal)");
}

void TrainConfig::Validate() const {
  if (iterations < 1) Fail(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  if (!(null_prob >= 0.0 && null_prob < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "null_prob must be in [0, 1)");
  }
  if (!(tension_init > 0.0) || !std::isfinite(tension_init)) {
    Fail(ErrorCode::kInvalidArgument, "tension_init must be positive");
  }
  if (!(tension_step >= 0.0) || !std::isfinite(tension_step)) {
    Fail(ErrorCode::kInvalidArgument, "tension_step must be >= 0");
  }
  if (!(smoothing_alpha >= 0.0) || !std::isfinite(smoothing_alpha)) {
    Fail(ErrorCode::kInvalidArgument, "smoothing_alpha must be >= 0");
  }
}

AlignmentModel::AlignmentModel(ModelType type, TranslationTable ttable,
                               double tension, double null_prob,
                               int iterations_run)
    : type_(type),
      ttable_(std::move(ttable)),
      tension_(tension),
      null_prob_(null_prob),
      iterations_run_(iterations_run) {
  if (!(tension_ > 0.0) || !std::isfinite(tension_)) {
    Fail(ErrorCode::kInvalidArgument, "tension must be positive");
  }
  if (!(null_prob_ >= 0.0 && null_prob_ < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "null_prob must be in [0, 1)");
  }
}

AlignmentModel AlignmentModel::WithTension(double tension) const {
  return AlignmentModel(type_, ttable_, tension, null_prob_, iterations_run_);
}

void AlignmentModel::Prior(std::size_t i, std::size_t m, std::size_t n,
                           std::span<double> out) const {
  if (out.size() < n + 1) {
    Fail(ErrorCode::kInvalidArgument, "prior buffer too small");
  }
  FillPrior(SpecOf(*this), i, m, n, out);
}

double DiagonalFeature(std::size_t i, std::size_t m, std::size_t j,
                       std::size_t n) {
  return -std::abs(static_cast<double>(i) / static_cast<double>(m) -
                   static_cast<double>(j) / static_cast<double>(n));
}

// -- Training ---------------------------------------------------------------

AlignmentModel Train(const corpus::ParallelCorpus& corpus,
                     const TrainConfig& config,
                     const IterationObserver& observer) {
  config.Validate();
  if (corpus.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot train on an empty corpus");
  }
  const EncodedCorpus enc = Encode(corpus);
  const ParamIndex idx = IndexParams(enc);

  const double uniform =
      enc.target_names.empty() ? 1.0 : 1.0 / static_cast<double>(enc.target_names.size());
  std::vector<double> prob(idx.size(), uniform);
  std::vector<double> row_total(enc.source_names.size());
  double tension = config.tension_init;
  const bool diagonal = config.model == ModelType::kDiagonal;

  for (int it = 1; it <= config.iterations; ++it) {
    const PriorSpec spec{config.model, config.null_prob, tension};
    auto res = RunEStep(enc, idx, prob, spec, /*want_counts=*/true, std::nullopt);
    if (!std::isfinite(res.log_likelihood)) {
      Fail(ErrorCode::kNumeric, "non-finite log-likelihood in iteration " +
                                    std::to_string(it));
    }

    std::fill(row_total.begin(), row_total.end(), 0.0);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      res.counts[s] += config.smoothing_alpha;
      row_total[idx.row[s]] += res.counts[s];
    }
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const double total = row_total[idx.row[s]];
      prob[s] = total > 0.0 ? res.counts[s] / total : 0.0;
    }

    const double gradient =
        diagonal ? res.empirical_feature - res.model_feature : 0.0;
    if (diagonal && config.learn_tension && enc.target_tokens > 0) {
      // Step on the per-token gradient so the step size does not scale with
      // corpus size.
      tension += config.tension_step * gradient /
                 static_cast<double>(enc.target_tokens);
      tension = std::clamp(tension, kMinTension, kMaxTension);
    }

    if (observer) {
      const AlignmentModel snapshot(config.model, ToTable(enc, idx, prob),
                                    tension, config.null_prob, it);
      observer({it, res.log_likelihood, gradient, &snapshot});
    }
  }
  return AlignmentModel(config.model, ToTable(enc, idx, prob), tension,
                        config.null_prob, config.iterations);
}

double LogLikelihood(const AlignmentModel& model,
                     const corpus::ParallelCorpus& corpus,
                     const InferenceOptions& options) {
  return EStepAtModel(model, corpus, options, false, std::nullopt).log_likelihood;
}

ExpectedCounts ComputeExpectedCounts(const AlignmentModel& model,
                                     const corpus::ParallelCorpus& corpus,
                                     const InferenceOptions& options) {
  EncodedCorpus enc;
  ParamIndex idx;
  auto res = EStepAtModel(model, corpus, options, true, std::nullopt, &enc, &idx);
  ExpectedCounts out;
  out.log_likelihood = res.log_likelihood;
  out.counts = ToTable(enc, idx, res.counts).rows();
  return out;
}

double TensionGradient(const AlignmentModel& model,
                       const corpus::ParallelCorpus& corpus,
                       const InferenceOptions& options) {
  if (model.type() != ModelType::kDiagonal) {
    Fail(ErrorCode::kInvalidArgument,
         "tension gradient is defined for the diagonal model only");
  }
  const auto res = EStepAtModel(model, corpus, options, false, std::nullopt);
  return res.empirical_feature - res.model_feature;
}

double ExpectedCompleteLogLikelihood(const AlignmentModel& posterior_model,
                                     const corpus::ParallelCorpus& corpus,
                                     double tension,
                                     const InferenceOptions& options) {
  return EStepAtModel(posterior_model, corpus, options, false, tension)
      .complete_log_likelihood;
}

// -- Viterbi ----------------------------------------------------------------

std::string SentenceAlignment::ToPharaoh() const {
  std::string out;
  for (const auto& link : links) {
    if (!link.source) continue;
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(link.target);
    out.push_back('-');
    out += std::to_string(*link.source);
  }
  return out;
}

SentenceAlignment ViterbiAlign(const AlignmentModel& model,
                               const corpus::Sentence& source,
                               const corpus::Sentence& target,
                               const InferenceOptions& options) {
  const auto& table = model.ttable();
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  if (options.unseen == UnseenPolicy::kError) {
    for (const auto& f : source.tokens) {
      if (!table.HasSource(f)) {
        Fail(ErrorCode::kInvalidArgument, "source token '" + f + "' unseen by the model");
      }
    }
    for (const auto& e : target.tokens) {
      if (!table.HasTarget(e)) {
        Fail(ErrorCode::kInvalidArgument, "target token '" + e + "' unseen by the model");
      }
    }
  }
  const double missing =
      options.unseen == UnseenPolicy::kFloor ? options.floor : 0.0;
  std::vector<const TranslationTable::Row*> rows(n + 1);
  rows[0] = table.FindRow(kNullToken);
  for (std::size_t j = 1; j <= n; ++j) rows[j] = table.FindRow(source.tokens[j - 1]);
  auto t = [&](std::size_t j, const std::string& e) {
    if (rows[j] == nullptr) return missing;
    auto it = rows[j]->find(e);
    return it == rows[j]->end() ? missing : it->second;
  };

  SentenceAlignment out;
  out.links.reserve(m);
  std::vector<double> prior(n + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& e = target.tokens[i - 1];
    model.Prior(i, m, n, prior);
    Link link{i - 1, std::nullopt};
    double best = -1.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double score = prior[j] * t(j, e);
      if (score > best) {
        best = score;
        link.source = j - 1;
      }
    }
    if (prior[0] * t(0, e) > best) link.source.reset();
    out.links.push_back(link);
  }
  return out;
}

}  // namespace domt::align
