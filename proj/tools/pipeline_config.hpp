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

#ifndef DOMT_TOOLS_PIPELINE_CONFIG_HPP_
#define DOMT_TOOLS_PIPELINE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "domt/domt.h"

namespace domt::cli {

// Every knob of a pipeline run. Defaults here are the defaults printed by
// --help; a config file (one [section] per subcommand) and then command-line
// flags override them.
struct PipelineConfig {
  struct TrainAlign {
    std::string source;
    std::string target;
    std::string output;
    int iterations = 5;
    std::string model = "diagonal";
    double null_prob = 0.08;
    double tension = 4.0;
    bool learn_tension = true;
    double tension_step = 0.1;
    double alpha = 0.0;
    bool reverse = false;
    bool verbose = false;
  } train_align;

  struct Align {
    std::string model;
    std::string source;
    std::string target;
    std::string output;
    std::string unseen = "floor";
    double floor = 1e-20;
  } align;

  struct BuildShortlist {
    std::string model;
    std::string output;
    std::string export_path;
    std::size_t k = 10;
    std::size_t frequent_f = 0;
    std::string target_corpus;
    std::string direction = "s2t";
    bool no_reserved = false;
  } shortlist;

  struct Coverage {
    std::string shortlist;
    std::string source;
    std::string target;
    std::string per_sentence;
  } coverage;

  struct Rerank {
    std::string nbest;
    std::string output;
    std::string annotated;
    std::string metric = "sentbleu";
    std::size_t beam = 6;
    bool passthrough = false;
    // Decoder length normalization; kept as run metadata only.
    double length_normalization = 0.6;
  } rerank;

  struct Score {
    std::string hyp;
    std::string ref;
    std::string baseline;
  } score;

  struct Stats {
    std::string reference;
    std::string reference_name = "reference";
    std::string bpe;
    std::vector<std::string> corpora;  // name=path
    std::vector<std::string> samples;  // name=fraction
    std::uint64_t min_count = 21;
    std::uint64_t seed = 1;
  } stats;

  struct BpeLearn {
    std::vector<std::string> inputs;
    std::string output;
    std::size_t merges = 32000;
  } bpe_learn;

  struct BpeApply {
    std::string model;
    std::string input;
    std::string output;
    bool decode = false;
  } bpe_apply;
};

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

int ExitCodeFor(domt_status status);

}  // namespace domt::cli

#endif  // DOMT_TOOLS_PIPELINE_CONFIG_HPP_
