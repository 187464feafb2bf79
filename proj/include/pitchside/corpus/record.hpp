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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pitchside/corpus/emotion.hpp"

namespace pitchside::corpus {

inline constexpr std::string_view kDefaultSpeaker = "commentator01";

struct UtteranceRecord {
  std::string utt_id;
  std::string recording_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text_raw;
  std::string text_vowelized;
  std::optional<EmotionLabel> emotion;  // nullopt = unlabeled
  std::optional<double> align_score;    // <= 0 when present
  std::string speaker_id{kDefaultSpeaker};

  /// Throws kMalformedInput: empty or whitespace-bearing ids, utt_id not
  /// prefixed by recording_id, start >= end, negative start, positive
  /// score, newline or tab in text.
  void validate() const;

  friend bool operator==(const UtteranceRecord&, const UtteranceRecord&) = default;
};

/// Tab-separated record list with a header row:
/// utt_id recording_id start_s end_s text_raw text_vowelized emotion align_score speaker_id
/// Empty emotion = unlabeled, empty align_score = absent, empty speaker_id =
/// default. Throws kMalformedInput or kUnknownLabel naming the line.
std::vector<UtteranceRecord> parse_records_tsv(std::string_view tsv);
std::vector<UtteranceRecord> read_records_tsv(const std::filesystem::path& path);
std::string format_records_tsv(const std::vector<UtteranceRecord>& records);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
/// Seconds with exactly three decimals.
std::string format_seconds(double s);

}  // namespace pitchside::corpus
