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

#include <fstream>

#include "domt/align.hpp"
#include "domt/error.hpp"
#include "text_util.hpp"

namespace domt::align {
namespace {

constexpr std::string_view kHeaderTag = "#domt-align";

[[noreturn]] void BadLine(const std::filesystem::path& path, std::size_t line_no,
                          const std::string& what) {
  Fail(ErrorCode::kFormat,
       path.string() + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

void WriteModel(const std::filesystem::path& path, const AlignmentModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << kHeaderTag << " model=" << ModelTypeName(model.type())
      << " tension=" << text::FormatRoundTrip(model.tension())
      << " null_prob=" << text::FormatRoundTrip(model.null_prob())
      << " iterations=" << model.iterations_run() << '\n';
  for (const auto& [src, row] : model.ttable().rows()) {
    for (const auto& [tgt, p] : row) {
      out << src << ' ' << tgt << ' ' << text::FormatRoundTrip(p) << '\n';
    }
  }
  if (!out) Fail(ErrorCode::kIo, "write error on " + path.string());
}

AlignmentModel ReadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) BadLine(path, 1, "missing model header");
  const auto header = corpus::Sentence::FromLine(line);
  if (header.size() != 5 || header.tokens[0] != kHeaderTag) {
    BadLine(path, 1, "expected '#domt-align model=.. tension=.. null_prob=.. iterations=..'");
  }
  auto field = [&](std::size_t k, std::string_view key) -> std::string_view {
    std::string_view tok = header.tokens[k];
    if (tok.substr(0, key.size()) != key || tok.size() <= key.size() ||
        tok[key.size()] != '=') {
      BadLine(path, 1, "expected header field '" + std::string(key) + "='");
    }
    return tok.substr(key.size() + 1);
  };
  ModelType type;
  try {
    type = ParseModelType(field(1, "model"));
  } catch (const Error& e) {
    BadLine(path, 1, e.what());
  }
  const auto tension = text::ParseDouble(field(2, "tension"));
  const auto null_prob = text::ParseDouble(field(3, "null_prob"));
  const auto iterations = text::ParseInt<int>(field(4, "iterations"));
  if (!tension || !null_prob || !iterations) BadLine(path, 1, "bad header value");

  TranslationTable::Rows rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = corpus::Sentence::FromLine(line);
    if (s.empty()) continue;
    if (s.size() != 3) BadLine(path, line_no, "expected 'source target probability'");
    const auto p = text::ParseDouble(s.tokens[2]);
    if (!p || !(*p >= 0.0 && *p <= 1.0)) BadLine(path, line_no, "bad probability");
    rows[s.tokens[0]][s.tokens[1]] = *p;
  }
  try {
    return AlignmentModel(type, TranslationTable(std::move(rows)), *tension,
                          *null_prob, *iterations);
  } catch (const Error& e) {
    BadLine(path, 1, e.what());
  }
}

}  // namespace domt::align
