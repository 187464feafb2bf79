// Copyright 2026 The Pitchside Authors.
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pitchside::text {

/// A decoded code point and its byte range in the source string.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

/// Throws Error{kInvalidUtf8} on malformed input (overlong forms,
/// surrogates and values above U+10FFFF included).
std::vector<CodePoint> decode_utf8(std::string_view s);
bool is_valid_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);
std::u32string to_u32(std::string_view s);

/// Number of code points.
std::size_t utf8_length(std::string_view s);

}  // namespace pitchside::text
