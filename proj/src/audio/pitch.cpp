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

#include "pitchside/audio/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"

namespace pitchside::audio {

std::size_t F0Track::voiced_count() const {
  return static_cast<std::size_t>(std::count_if(f0_hz.begin(), f0_hz.end(), [](double f) { return f > 0.0; }));
}

std::optional<double> F0Track::mean_voiced_f0() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (double f : f0_hz) {
    if (f > 0.0) {
      sum += f;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

F0Track estimate_f0(const AudioBuffer& buffer, const F0Options& options) {
  const double rate = buffer.sample_rate;
  if (!(options.f0_min > 0.0) || !(options.f0_min < options.f0_max) ||
      options.f0_max > rate / 4.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 0 < f0_min < f0_max <= sample_rate/4 (got " + std::to_string(options.f0_min) +
                    ", " + std::to_string(options.f0_max) + ")");
  }
  const Framing framing = Framing::make(options.frame_len_ms, options.hop_ms, buffer.sample_rate);
  const std::size_t frames = framing.frame_count(buffer.size());
  if (frames == 0) {
    throw Error(ErrorCode::kBufferTooShort,
                std::to_string(buffer.size()) + " samples is shorter than one frame");
  }

  const auto lag_min = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(rate / options.f0_max)));
  const auto lag_max = static_cast<std::size_t>(std::ceil(rate / options.f0_min));
  const std::span<const float> x = buffer.view();
  const std::size_t n = x.size();

  // Prefix sums of x^2 give the energy of any window in O(1).
  std::vector<double> energy_prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    energy_prefix[i + 1] = energy_prefix[i] + static_cast<double>(x[i]) * x[i];
  }
  auto window_energy = [&](std::size_t begin, std::size_t len) {
    return energy_prefix[begin + len] - energy_prefix[begin];
  };

  const auto& k = simd::active();
  F0Track track;
  track.framing = framing;
  track.f0_min = options.f0_min;
  track.f0_max = options.f0_max;
  track.f0_hz.assign(frames, 0.0);
  track.voicing_confidence.assign(frames, 0.0);

  std::vector<double> corr(lag_max + 2, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * framing.hop;
    const double frame_energy = window_energy(start, framing.length);
    if (frame_energy < 1e-10) continue;

    std::size_t last_lag = lag_min;
    std::fill(corr.begin(), corr.end(), 0.0);
    for (std::size_t lag = lag_min; lag <= lag_max && start + lag < n; ++lag) {
      const std::size_t overlap = std::min(framing.length, n - start - lag);
      if (overlap < framing.length / 2) break;
      const double num = k.dot(x.subspan(start, overlap), x.subspan(start + lag, overlap));
      const double den = std::sqrt(window_energy(start, overlap) * window_energy(start + lag, overlap));
      corr[lag] = den > 0.0 ? num / den : 0.0;
      last_lag = lag;
    }

    double best = 0.0;
    for (std::size_t lag = lag_min; lag <= last_lag; ++lag) best = std::max(best, corr[lag]);
    if (best < options.voicing_threshold) continue;

    std::size_t chosen = 0;
    for (std::size_t lag = lag_min; lag <= last_lag; ++lag) {
      const bool left_ok = lag == lag_min || corr[lag] >= corr[lag - 1];
      const bool right_ok = lag == last_lag || corr[lag] >= corr[lag + 1];
      if (left_ok && right_ok && corr[lag] >= options.octave_ratio * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen == 0) continue;

    double refined = static_cast<double>(chosen);
    if (chosen > lag_min && chosen < last_lag) {
      const double a = corr[chosen - 1];
      const double b = corr[chosen];
      const double c = corr[chosen + 1];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) refined += std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    track.f0_hz[f] = std::clamp(rate / refined, options.f0_min, options.f0_max);
    track.voicing_confidence[f] = std::clamp(corr[chosen], 0.0, 1.0);
  }
  return track;
}

}  // namespace pitchside::audio
