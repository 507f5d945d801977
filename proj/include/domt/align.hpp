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

#ifndef DOMT_ALIGN_HPP_
#define DOMT_ALIGN_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "domt/corpus.hpp"

namespace domt::align {

// Source-side name of the empty word. It is reserved: a literal "<null>"
// token in the data would share its row.
inline constexpr std::string_view kNullToken = "<null>";

// Conditional distributions t(target | source), one row per source token
// (including the empty word). Rows are kept sorted by token.
class TranslationTable {
 public:
  using Row = std::map<std::string, double, std::less<>>;
  using Rows = std::map<std::string, Row, std::less<>>;

  TranslationTable() = default;
  explicit TranslationTable(Rows rows);

  void Set(std::string_view source, std::string_view target, double prob);

  std::optional<double> Find(std::string_view source,
                             std::string_view target) const;
  const Row* FindRow(std::string_view source) const;
  bool HasSource(std::string_view source) const {
    return rows_.find(source) != rows_.end();
  }
  bool HasTarget(std::string_view target) const {
    return targets_.find(target) != targets_.end();
  }

  const Rows& rows() const { return rows_; }

  // Largest |1 - sum of row| over all rows.
  double MaxNormalizationError() const;

  // Same entries keyed the other way round; rows are not renormalized.
  TranslationTable Transposed() const;

 private:
  Rows rows_;
  std::set<std::string, std::less<>> targets_;
};

enum class ModelType { kIbm1, kDiagonal };

std::string_view ModelTypeName(ModelType type);
ModelType ParseModelType(std::string_view name);

struct TrainConfig {
  int iterations = 5;
  ModelType model = ModelType::kDiagonal;
  double null_prob = 0.08;
  double tension_init = 4.0;
  bool learn_tension = true;
  double tension_step = 0.1;
  // Added to every expected count of a co-occurring pair before the M-step.
  double smoothing_alpha = 0.0;

  void Validate() const;
};

// Bounds applied to the tension after each gradient step.
inline constexpr double kMinTension = 0.1;
inline constexpr double kMaxTension = 20.0;

class AlignmentModel {
 public:
  AlignmentModel(ModelType type, TranslationTable ttable, double tension,
                 double null_prob, int iterations_run = 0);

  ModelType type() const { return type_; }
  const TranslationTable& ttable() const { return ttable_; }
  double tension() const { return tension_; }
  double null_prob() const { return null_prob_; }
  int iterations_run() const { return iterations_run_; }

  AlignmentModel WithTension(double tension) const;

  // Alignment prior for 1-based target position `i` of `m` against `n`
  // source words. out[0] is the empty word, out[j] source word j.
  void Prior(std::size_t i, std::size_t m, std::size_t n,
             std::span<double> out) const;

 private:
  ModelType type_;
  TranslationTable ttable_;
  double tension_;
  double null_prob_;
  int iterations_run_;
};

// Diagonal-preference feature -|i/m - j/n| for 1-based i and j.
double DiagonalFeature(std::size_t i, std::size_t m, std::size_t j,
                       std::size_t n);

enum class UnseenPolicy {
  // Tokens absent from the model vocabulary are an error; absent pairs of
  // known tokens have probability 0.
  kError,
  // Any absent pair takes the floor probability.
  kFloor,
};

struct InferenceOptions {
  UnseenPolicy unseen = UnseenPolicy::kFloor;
  double floor = 1e-20;
};

struct IterationReport {
  int iteration = 0;
  // Log-likelihood of the corpus under the parameters entering this
  // iteration (the E-step value).
  double log_likelihood = 0.0;
  // Tension gradient at the E-step posteriors (0 for IBM Model 1).
  double tension_gradient = 0.0;
  const AlignmentModel* model = nullptr;  // parameters after the update
};

using IterationObserver = std::function<void(const IterationReport&)>;

// EM training. Iteration 1 starts from uniform t over the target vocabulary.
// Fails with kNumeric if the likelihood becomes non-finite.
AlignmentModel Train(const corpus::ParallelCorpus& corpus,
                     const TrainConfig& config,
                     const IterationObserver& observer = {});

double LogLikelihood(const AlignmentModel& model,
                     const corpus::ParallelCorpus& corpus,
                     const InferenceOptions& options = {});

struct ExpectedCounts {
  TranslationTable::Rows counts;  // c(target | source), empty word included
  double log_likelihood = 0.0;
};

// One E-step at the model's current parameters.
ExpectedCounts ComputeExpectedCounts(const AlignmentModel& model,
                                     const corpus::ParallelCorpus& corpus,
                                     const InferenceOptions& options = {});

// d/d(tension) of the expected complete-data log-likelihood, posteriors held
// at the model's current parameters. kInvalidArgument for IBM Model 1.
double TensionGradient(const AlignmentModel& model,
                       const corpus::ParallelCorpus& corpus,
                       const InferenceOptions& options = {});

// Expected complete-data log-likelihood with posteriors taken from
// `posterior_model` and the prior evaluated at `tension`.
double ExpectedCompleteLogLikelihood(const AlignmentModel& posterior_model,
                                     const corpus::ParallelCorpus& corpus,
                                     double tension,
                                     const InferenceOptions& options = {});

struct Link {
  std::size_t target = 0;
  std::optional<std::size_t> source;  // nullopt: aligned to the empty word

  friend bool operator==(const Link&, const Link&) = default;
};

struct SentenceAlignment {
  std::vector<Link> links;  // one per target position, in order

  // "i-j" pairs (target-source, 0-based), empty-word links omitted.
  std::string ToPharaoh() const;
};

// Per target position the argmax of prior * t. Ties go to the smaller source
// index; the empty word wins only when strictly better.
SentenceAlignment ViterbiAlign(const AlignmentModel& model,
                               const corpus::Sentence& source,
                               const corpus::Sentence& target,
                               const InferenceOptions& options = {});

// Header "#domt-align model=<m> tension=<t> null_prob=<p> iterations=<n>",
// then "source target probability" lines with 17 significant digits.
void WriteModel(const std::filesystem::path& path, const AlignmentModel& model);
AlignmentModel ReadModel(const std::filesystem::path& path);

}  // namespace domt::align

#endif  // DOMT_ALIGN_HPP_
