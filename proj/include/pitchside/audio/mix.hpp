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

#include <limits>

#include "pitchside/audio/audio_buffer.hpp"

namespace pitchside::audio {

/// Sentinel SNR meaning "do not add noise".
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Peak level applied when the summed signal would clip.
inline constexpr double kMixPeakLimit = 0.99;

struct MixResult {
  AudioBuffer mixed;
  double noise_gain = 0.0;       // factor applied to the looped noise
  double output_gain = 1.0;      // < 1 when peak normalization kicked in
  bool normalized = false;
};

/// Loops or truncates `noise` to the speech length, scales it so that
/// 10*log10(P_speech / P_scaled_noise) == snr_db, and adds it to the
/// speech. If the sum peaks above 1.0 it is rescaled to a peak of 0.99.
/// snr_db == kNoNoise returns the speech unchanged.
/// Throws kSampleRateMismatch, kSilentNoiseSource.
MixResult mix_noise_detailed(const AudioBuffer& speech, const AudioBuffer& noise, double snr_db);

AudioBuffer mix_noise(const AudioBuffer& speech, const AudioBuffer& noise, double snr_db);

/// `noise` repeated from its start until `length` samples are filled.
std::vector<float> loop_to_length(const AudioBuffer& noise, std::size_t length);

}  // namespace pitchside::audio
