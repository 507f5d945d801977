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

#ifndef DOMT_TOOLS_COMMANDS_HPP_
#define DOMT_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pipeline_config.hpp"

namespace CLI {
class App;
}

namespace domt::cli {

// Raised by a subcommand; carries the process exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

void RunTrainAlign(const PipelineConfig::TrainAlign& cfg, std::ostream& log);
void RunAlign(const PipelineConfig::Align& cfg);
void RunBuildShortlist(const PipelineConfig::BuildShortlist& cfg);
void RunCoverage(const PipelineConfig::Coverage& cfg, std::ostream& out);
void RunRerank(const PipelineConfig::Rerank& cfg);
void RunScore(const PipelineConfig::Score& cfg, std::ostream& out);
void RunStats(const PipelineConfig::Stats& cfg, std::ostream& out);
void RunBpeLearn(const PipelineConfig::BpeLearn& cfg);
void RunBpeApply(const PipelineConfig::BpeApply& cfg);

// Registers every subcommand on `app`, bound to `config`.
void AddSubcommands(CLI::App& app, PipelineConfig& config);

// Parses argv, runs the chosen subcommand and returns the exit code.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace domt::cli

#endif  // DOMT_TOOLS_COMMANDS_HPP_
