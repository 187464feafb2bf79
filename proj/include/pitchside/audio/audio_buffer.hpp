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
#include <span>
#include <vector>

namespace pitchside::audio {

/// Canonical corpus and serving rate.
inline constexpr int kCanonicalRate = 22050;

/// Mono PCM samples in [-1, 1] at a fixed rate.
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = kCanonicalRate;

  AudioBuffer() = default;
  AudioBuffer(std::vector<float> s, int rate);

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double duration_seconds() const noexcept {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  std::span<const float> view() const noexcept { return samples; }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;
};

/// Number of samples covering `ms` milliseconds at `rate`, rounded to nearest.
std::size_t samples_for_ms(double ms, int rate);

}  // namespace pitchside::audio
