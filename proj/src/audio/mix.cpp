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

#include "pitchside/audio/mix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"

namespace pitchside::audio {

std::vector<float> loop_to_length(const AudioBuffer& noise, std::size_t length) {
  std::vector<float> out(length);
  if (noise.empty()) return out;
  for (std::size_t pos = 0; pos < length; pos += noise.size()) {
    const std::size_t chunk = std::min(noise.size(), length - pos);
    std::copy_n(noise.samples.begin(), chunk, out.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return out;
}

MixResult mix_noise_detailed(const AudioBuffer& speech, const AudioBuffer& noise, double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return MixResult{speech, 0.0, 1.0, false};
  if (std::isnan(snr_db)) throw Error(ErrorCode::kInvalidArgument, "snr_db is NaN");
  if (speech.sample_rate != noise.sample_rate) {
    throw Error(ErrorCode::kSampleRateMismatch,
                "speech at " + std::to_string(speech.sample_rate) + " Hz, noise at " +
                    std::to_string(noise.sample_rate) + " Hz");
  }
  const auto& k = simd::active();
  const std::vector<float> bed = loop_to_length(noise, speech.size());
  const double noise_power = speech.empty() ? 0.0 : k.sum_squares(bed) / static_cast<double>(bed.size());
  if (k.max_abs(noise.view()) == 0.0f || (!speech.empty() && !(noise_power > 0.0))) {
    throw Error(ErrorCode::kSilentNoiseSource, "noise source has no energy");
  }
  if (speech.empty()) return MixResult{speech, 0.0, 1.0, false};

  const double speech_power = k.sum_squares(speech.view()) / static_cast<double>(speech.size());
  const double gain = std::sqrt(speech_power / (noise_power * std::pow(10.0, snr_db / 10.0)));

  MixResult result;
  result.noise_gain = gain;
  result.mixed.sample_rate = speech.sample_rate;
  result.mixed.samples.resize(speech.size());
  k.scaled_add(speech.view(), bed, gain, result.mixed.samples);

  const float peak = k.max_abs(result.mixed.view());
  if (peak > 1.0f) {
    result.normalized = true;
    result.output_gain = kMixPeakLimit / static_cast<double>(peak);
    for (float& s : result.mixed.samples) {
      s = static_cast<float>(static_cast<double>(s) * result.output_gain);
    }
  }
  return result;
}

AudioBuffer mix_noise(const AudioBuffer& speech, const AudioBuffer& noise, double snr_db) {
  return mix_noise_detailed(speech, noise, snr_db).mixed;
}

}  // namespace pitchside::audio
