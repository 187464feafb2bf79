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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"
#include "pitchside/audio/features.hpp"

namespace pitchside::vad {

enum class SegmentLabel { kSpeech, kNoise, kMusic, kNoEnergy };

/// "speech", "noise", "music", "noEnergy".
std::string_view to_string(SegmentLabel label);
SegmentLabel parse_label(std::string_view text);

struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;
  SegmentLabel label = SegmentLabel::kSpeech;

  double duration() const { return end_s - start_s; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct VadConfig {
  double energy_floor_db = -55.0;
  // Music: tonal (flat spectrum rejected) and steady over a local window.
  double flatness_music_max = 0.15;
  std::size_t music_window_frames = 25;
  double music_flatness_std_max = 0.03;
  double music_energy_std_max_db = 3.0;
  // Speech band, zero-crossing rate in crossings per second.
  double zcr_speech_min_hz = 50.0;
  double zcr_speech_max_hz = 4000.0;
  double flatness_speech_max = 0.5;
  double min_segment_s = 0.3;
  std::size_t smoothing_frames = 11;

  /// Throws kConfigError on non-finite thresholds or a non-positive
  /// minimum segment length.
  void validate() const;
};

/// Per-frame classifier. The heuristic cascade below is the built-in
/// implementation; a model-backed classifier can be swapped in.
class FrameClassifier {
 public:
  virtual ~FrameClassifier() = default;
  virtual std::vector<SegmentLabel> classify(const audio::FeatureTrack& features) const = 0;
};

class HeuristicClassifier final : public FrameClassifier {
 public:
  explicit HeuristicClassifier(VadConfig config);
  std::vector<SegmentLabel> classify(const audio::FeatureTrack& features) const override;

 private:
  VadConfig config_;
};

/// Decision cascade per frame: below the energy floor -> NoEnergy; tonal and
/// locally steady -> Music; zero-crossing rate and flatness inside the speech
/// band -> Speech; otherwise Noise. Throws kEmptyTrack.
std::vector<SegmentLabel> classify_frames(const audio::FeatureTrack& features, const VadConfig& config);

/// Majority-smooths the labels, merges runs, and folds runs shorter than
/// min_segment_s into their longer neighbour. The result tiles
/// [0, duration_s] without gaps or overlaps.
std::vector<Segment> smooth_and_segment(const std::vector<SegmentLabel>& labels,
                                        const audio::Framing& framing, double duration_s,
                                        const VadConfig& config);

std::vector<Segment> filter_speech(const std::vector<Segment>& segments);

/// One clip per segment, sample range [round(start*rate), round(end*rate)).
/// Throws kSegmentOutOfRange.
std::vector<audio::AudioBuffer> cut_audio(const audio::AudioBuffer& buffer,
                                          const std::vector<Segment>& segments);

/// features -> classify -> smooth, using `classifier` if given.
std::vector<Segment> segment_recording(const audio::AudioBuffer& buffer, const VadConfig& config,
                                       const FrameClassifier* classifier = nullptr);

/// Lines of `<start>\t<end>\t<label>\n`, seconds with three decimals.
std::string format_segments(const std::vector<Segment>& segments);
/// Throws kMalformedInput with the offending line number.
std::vector<Segment> parse_segments(std::string_view text);

}  // namespace pitchside::vad
