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
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pitchside/text/script.hpp"

namespace pitchside::text {

/// Latin -> Arabic mapping loaded from a TSV data file. Keys are lowercase
/// Latin, values Arabic script only.
class TranslitTable {
 public:
  TranslitTable() = default;

  /// Throws kConfigError on malformed lines, duplicate keys or
  /// non-Arabic values.
  static TranslitTable parse(std::string_view tsv);
  static TranslitTable load(const std::filesystem::path& path);
  /// data/translit/latin_to_arabic.tsv from the source tree.
  static const TranslitTable& bundled();
  static std::filesystem::path bundled_path();

  /// Nullptr if the key is absent.
  const std::string* find(std::u32string_view key) const;
  std::size_t max_key_length() const { return max_key_; }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::u32string, std::string> map_;
  std::size_t max_key_ = 0;
};

struct TranslitWarning {
  std::size_t offset = 0;  // byte offset inside the token
  std::string text;        // offending input, empty for an empty token
  std::string message;
};

struct TranslitResult {
  std::string arabic;
  std::vector<TranslitWarning> warnings;
};

/// Greedy longest match over the lowercased token. Unmapped characters are
/// dropped and reported. Throws kNotLatinToken.
TranslitResult transliterate(const Token& token, const TranslitTable& table);

/// Replaces every Latin token of `text` and keeps everything else,
/// including the original separators.
TranslitResult transliterate_text(std::string_view text, const TranslitTable& table);

}  // namespace pitchside::text
