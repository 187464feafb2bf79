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

#include "pitchside/audio/audio_buffer.hpp"

#include <cmath>
#include <string>

#include "pitchside/error.hpp"

namespace pitchside::audio {

AudioBuffer::AudioBuffer(std::vector<float> s, int rate) : samples(std::move(s)), sample_rate(rate) {
  if (rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive, got " + std::to_string(rate));
  }
}

std::size_t samples_for_ms(double ms, int rate) {
  return static_cast<std::size_t>(std::llround(ms * rate / 1000.0));
}

}  // namespace pitchside::audio
