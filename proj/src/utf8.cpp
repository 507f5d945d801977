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

#include "utf8.hpp"

#include <cstddef>

namespace domt::utf8 {
namespace {

// Length of the sequence introduced by `lead`, or 0 for an invalid lead byte.
std::size_t SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// Validates the sequence at text[pos]; returns its length or 0.
std::size_t ValidSequenceAt(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  const std::size_t len = SequenceLength(lead);
  if (len == 0 || pos + len > text.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if (!IsContinuation(static_cast<unsigned char>(text[pos + k]))) return 0;
  }
  if (len >= 3) {
    const auto second = static_cast<unsigned char>(text[pos + 1]);
    // Overlongs, UTF-16 surrogates and code points above U+10FFFF.
    if (lead == 0xE0 && second < 0xA0) return 0;
    if (lead == 0xED && second > 0x9F) return 0;
    if (lead == 0xF0 && second < 0x90) return 0;
    if (lead == 0xF4 && second > 0x8F) return 0;
  }
  return len;
}

}  // namespace

bool IsValid(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t len = ValidSequenceAt(text, pos);
    if (len == 0) return false;
    pos += len;
  }
  return true;
}

std::vector<std::string_view> CodePoints(std::string_view text) {
  std::vector<std::string_view> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = ValidSequenceAt(text, pos);
    if (len == 0) len = 1;
    out.push_back(text.substr(pos, len));
    pos += len;
  }
  return out;
}

}  // namespace domt::utf8
