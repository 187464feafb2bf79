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
#include <optional>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"
#include "pitchside/audio/features.hpp"

namespace pitchside::audio {

struct F0Options {
  double frame_len_ms = kDefaultFrameMs;
  double hop_ms = kDefaultHopMs;
  double f0_min = 60.0;
  double f0_max = 400.0;
  double voicing_threshold = 0.5;
  /// The shortest-lag local peak within this fraction of the best peak wins,
  /// which keeps period multiples from being reported.
  double octave_ratio = 0.9;
};

struct F0Track {
  Framing framing;
  double f0_min = 0.0;
  double f0_max = 0.0;
  std::vector<double> f0_hz;               // 0 = unvoiced
  std::vector<double> voicing_confidence;  // in [0, 1]

  std::size_t size() const { return f0_hz.size(); }
  std::size_t voiced_count() const;
  /// Mean F0 over voiced frames, nullopt when none are voiced.
  std::optional<double> mean_voiced_f0() const;
};

/// Normalized cross-correlation pitch tracker. For each frame the
/// correlation between the frame and its lagged copy is searched over lags
/// [rate/f0_max, rate/f0_min]; frames whose peak reaches the voicing
/// threshold get f0 = rate/lag (parabolically refined), others 0.
/// Throws kInvalidArgument unless f0_min < f0_max <= rate/4, and
/// kBufferTooShort for buffers shorter than one frame.
F0Track estimate_f0(const AudioBuffer& buffer, const F0Options& options = {});

}  // namespace pitchside::audio
