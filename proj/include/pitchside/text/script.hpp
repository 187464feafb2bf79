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

enum class Script { kArabic, kLatin, kDigit, kPunct, kOther };

std::string_view to_string(Script script);

/// Arabic letters and marks: 0600–06FF, 0750–077F, 08A0–08FF and the
/// presentation forms FB50–FDFF, FE70–FEFF.
bool is_arabic_script(char32_t cp);
bool is_space(char32_t cp);

/// Arabic-Indic digits are Digit and Arabic punctuation is Punct, even
/// though both sit inside the Arabic block.
Script classify(char32_t cp);

struct Token {
  std::string text;
  Script script = Script::kOther;
  std::size_t begin = 0;  // byte span in the source
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Maximal same-script runs, split at whitespace. The bytes between
/// consecutive tokens are exactly the whitespace of the source.
std::vector<Token> tokenize(std::string_view text);

/// Drops tatweel, collapses whitespace runs to one ASCII space and trims.
std::string normalize(std::string_view text);

/// Arabic harakat, tanwin, shadda and sukun (U+064B–U+0652).
bool is_diacritic(char32_t cp);
std::string strip_diacritics(std::string_view text);

}  // namespace pitchside::text
