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

#include "pitchside/audio/resample.hpp"

#include <cmath>
#include <string>

#include "pitchside/error.hpp"

namespace pitchside::audio {

AudioBuffer resample(const AudioBuffer& buffer, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "target rate must be positive, got " + std::to_string(target_rate));
  }
  if (target_rate == buffer.sample_rate) return buffer;

  const std::size_t in_len = buffer.size();
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(in_len) * target_rate / buffer.sample_rate));
  std::vector<float> out(out_len);
  if (in_len == 0) return AudioBuffer(std::move(out), target_rate);

  const double step = static_cast<double>(buffer.sample_rate) / target_rate;
  const auto& in = buffer.samples;
  for (std::size_t i = 0; i < out_len; ++i) {
    const double pos = static_cast<double>(i) * step;
    const auto left = static_cast<std::size_t>(pos);
    if (left + 1 >= in_len) {
      out[i] = in[in_len - 1];
      continue;
    }
    const double frac = pos - static_cast<double>(left);
    out[i] = static_cast<float>(in[left] + frac * (static_cast<double>(in[left + 1]) - in[left]));
  }
  return AudioBuffer(std::move(out), target_rate);
}

}  // namespace pitchside::audio
