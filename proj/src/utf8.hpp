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

#ifndef DOMT_SRC_UTF8_HPP_
#define DOMT_SRC_UTF8_HPP_

#include <string_view>
#include <vector>

namespace domt::utf8 {

bool IsValid(std::string_view text);

// Splits valid UTF-8 into one view per code point. Invalid input is split
// byte-wise past the first bad lead byte.
std::vector<std::string_view> CodePoints(std::string_view text);

}  // namespace domt::utf8

#endif  // DOMT_SRC_UTF8_HPP_
