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
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"

namespace pitchside::audio {

inline constexpr double kDefaultFrameMs = 25.0;
inline constexpr double kDefaultHopMs = 10.0;
inline constexpr double kEnergyFloor = 1e-12;

/// Frame geometry in samples. Frame i covers [i*hop, i*hop + length).
struct Framing {
  double frame_len_ms = kDefaultFrameMs;
  double hop_ms = kDefaultHopMs;
  int sample_rate = kCanonicalRate;
  std::size_t length = 0;
  std::size_t hop = 0;

  static Framing make(double frame_len_ms, double hop_ms, int sample_rate);

  /// floor((n - length) / hop) + 1, or 0 when n < length.
  std::size_t frame_count(std::size_t n) const;
  double hop_seconds() const { return static_cast<double>(hop) / sample_rate; }
  double length_seconds() const { return static_cast<double>(length) / sample_rate; }
};

struct FeatureTrack {
  Framing framing;
  std::vector<double> energy_db;  // 10*log10(mean(x^2) + 1e-12)
  std::vector<double> zcr;        // sign changes per frame
  std::vector<double> spectral_flatness;  // in [0, 1]
  double duration_s = 0.0;

  std::size_t size() const { return energy_db.size(); }
};

/// Per-frame energy, zero-crossing count and spectral flatness. Flatness is
/// the geometric over arithmetic mean of the Hann-windowed magnitude
/// spectrum, bins 1..N/2; an all-zero frame has flatness 0.
/// Throws kBufferTooShort when the buffer is shorter than one frame and
/// kInvalidArgument when the hop exceeds the frame length.
FeatureTrack frame_features(const AudioBuffer& buffer, double frame_len_ms = kDefaultFrameMs,
                            double hop_ms = kDefaultHopMs);

}  // namespace pitchside::audio
