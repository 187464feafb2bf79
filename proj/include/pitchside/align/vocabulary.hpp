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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pitchside::align {

inline constexpr std::string_view kBlankToken = "<blank>";

/// Ordered token inventory of a character-level acoustic model.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws kMalformedInput on duplicate tokens or an empty list. The blank
  /// is the "<blank>" entry when present, otherwise index 0.
  explicit Vocabulary(std::vector<std::string> tokens);

  /// Parses a JSON array of strings.
  static Vocabulary from_json(std::string_view json);
  static Vocabulary load(const std::filesystem::path& path);
  std::string to_json() const;

  std::size_t size() const { return tokens_.size(); }
  std::size_t blank_index() const { return blank_; }
  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::size_t> index_of(std::string_view token) const;

  /// Greedy longest-match encoding of a transcript line. Whitespace maps
  /// to a " " or "|" token when the vocabulary has one and is skipped
  /// otherwise. Throws kTokenOutOfVocab.
  std::vector<std::size_t> encode(std::string_view text) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t blank_ = 0;
  std::size_t max_token_bytes_ = 0;
};

}  // namespace pitchside::align
