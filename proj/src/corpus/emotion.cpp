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

#include "pitchside/corpus/emotion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pitchside/error.hpp"

namespace pitchside::corpus {

std::string_view to_string(EmotionLabel label) {
  switch (label) {
    case EmotionLabel::kNeutral: return "neutral";
    case EmotionLabel::kExcited: return "excited";
    case EmotionLabel::kVeryExcited: return "very_excited";
  }
  return "neutral";
}

EmotionLabel parse_emotion(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "neutral") return EmotionLabel::kNeutral;
  if (lower == "excited") return EmotionLabel::kExcited;
  if (lower == "very_excited") return EmotionLabel::kVeryExcited;
  throw Error(ErrorCode::kUnknownLabel, "'" + std::string(text) + "'");
}

void EmotionThresholds::validate() const {
  if (!(excited_hz > 0.0 && excited_hz < very_excited_hz)) {
    throw Error(ErrorCode::kConfigError, "emotion thresholds need 0 < excited_hz < very_excited_hz");
  }
}

EmotionLabel suggest_emotion(double mean_f0_hz, const EmotionThresholds& thresholds) {
  thresholds.validate();
  if (mean_f0_hz < thresholds.excited_hz) return EmotionLabel::kNeutral;
  if (mean_f0_hz < thresholds.very_excited_hz) return EmotionLabel::kExcited;
  return EmotionLabel::kVeryExcited;
}

EmotionLabel suggest_emotion(const audio::F0Track& f0, const EmotionThresholds& thresholds) {
  const auto mean = f0.mean_voiced_f0();
  if (!mean) throw Error(ErrorCode::kNoVoicedFrames, "F0 track has no voiced frames");
  return suggest_emotion(*mean, thresholds);
}

std::map<std::string, EmotionLabel> parse_labels(std::string_view tsv) {
  std::map<std::string, EmotionLabel> labels;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedInput, where + ": expected utt_id<TAB>label");
    }
    const std::string id = line.substr(0, tab);
    EmotionLabel label;
    try {
      label = parse_emotion(line.substr(tab + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnknownLabel, where + ": '" + line.substr(tab + 1) + "'");
    }
    if (!labels.emplace(id, label).second) throw Error(ErrorCode::kDuplicateUttId, where + ": " + id);
  }
  return labels;
}

std::map<std::string, EmotionLabel> ingest_labels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_labels(ss.str());
}

}  // namespace pitchside::corpus
