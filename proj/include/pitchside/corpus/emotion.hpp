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
#include <map>
#include <string>
#include <string_view>

#include "pitchside/audio/pitch.hpp"

namespace pitchside::corpus {

enum class EmotionLabel { kNeutral, kExcited, kVeryExcited };

/// "neutral", "excited", "very_excited".
std::string_view to_string(EmotionLabel label);
/// Case-insensitive; throws kUnknownLabel.
EmotionLabel parse_emotion(std::string_view text);

struct EmotionThresholds {
  double excited_hz = 170.0;
  double very_excited_hz = 250.0;

  /// Throws kConfigError unless 0 < excited_hz < very_excited_hz.
  void validate() const;
};

/// Mean voiced F0 below excited_hz -> Neutral, in [excited_hz,
/// very_excited_hz) -> Excited, otherwise VeryExcited. Throws
/// kNoVoicedFrames.
EmotionLabel suggest_emotion(const audio::F0Track& f0, const EmotionThresholds& thresholds = {});
EmotionLabel suggest_emotion(double mean_f0_hz, const EmotionThresholds& thresholds = {});

/// `utt_id<TAB>label` lines; blank lines and '#' comments skipped.
/// Throws kUnknownLabel, kDuplicateUttId or kMalformedInput, each naming
/// the line number.
std::map<std::string, EmotionLabel> parse_labels(std::string_view tsv);
std::map<std::string, EmotionLabel> ingest_labels(const std::filesystem::path& path);

}  // namespace pitchside::corpus
