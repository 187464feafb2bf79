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

#include "pitchside/align/vocabulary.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pitchside/error.hpp"
#include "pitchside/text/utf8.hpp"

namespace pitchside::align {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw Error(ErrorCode::kMalformedInput, "vocabulary is empty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw Error(ErrorCode::kMalformedInput, "empty token at index " + std::to_string(i));
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate token '" + tokens_[i] + "'");
    }
    if (tokens_[i] != kBlankToken) max_token_bytes_ = std::max(max_token_bytes_, tokens_[i].size());
  }
  blank_ = index_of(kBlankToken).value_or(0);
}

Vocabulary Vocabulary::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("vocabulary JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kMalformedInput, "vocabulary must be a JSON array");
  std::vector<std::string> tokens;
  for (const auto& t : doc) {
    if (!t.is_string()) throw Error(ErrorCode::kMalformedInput, "vocabulary entries must be strings");
    tokens.push_back(t.get<std::string>());
  }
  return Vocabulary(std::move(tokens));
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open vocabulary " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Vocabulary::to_json() const { return nlohmann::json(tokens_).dump(); }

std::optional<std::size_t> Vocabulary::index_of(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Vocabulary::encode(std::string_view text) const {
  const auto space = index_of(" ").has_value() ? index_of(" ") : index_of("|");
  std::vector<std::size_t> ids;
  const auto cps = text::decode_utf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i].value;
    if (c == U' ' || c == U'\t') {
      if (space && (ids.empty() || ids.back() != *space)) ids.push_back(*space);
      ++i;
      continue;
    }
    // Longest token starting at this code point.
    std::size_t best_len = 0;
    std::size_t best_id = 0;
    std::size_t bytes = 0;
    for (std::size_t j = i; j < cps.size() && bytes + cps[j].length <= max_token_bytes_; ++j) {
      bytes += cps[j].length;
      if (auto id = index_of(text.substr(cps[i].offset, bytes)); id && *id != blank_) {
        best_len = j - i + 1;
        best_id = *id;
      }
    }
    if (best_len == 0) {
      std::string ch(text.substr(cps[i].offset, cps[i].length));
      throw Error(ErrorCode::kTokenOutOfVocab, "'" + ch + "' at byte " + std::to_string(cps[i].offset));
    }
    ids.push_back(best_id);
    i += best_len;
  }
  // Leading/trailing word separators carry no acoustics.
  while (space && !ids.empty() && ids.back() == *space) ids.pop_back();
  if (space && !ids.empty() && ids.front() == *space) ids.erase(ids.begin());
  return ids;
}

}  // namespace pitchside::align
