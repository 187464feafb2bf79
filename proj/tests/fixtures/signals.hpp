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

// Deterministic synthetic signals used across the test suites.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"

namespace pitchside::testing {

inline audio::AudioBuffer sine(double freq_hz, double seconds, int rate = audio::kCanonicalRate,
                               double amplitude = 0.5) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  std::vector<float> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = static_cast<float>(amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate));
  }
  return audio::AudioBuffer(std::move(s), rate);
}

inline audio::AudioBuffer silence(double seconds, int rate = audio::kCanonicalRate) {
  return audio::AudioBuffer(std::vector<float>(static_cast<std::size_t>(std::llround(seconds * rate)), 0.0f), rate);
}

/// Uniform white noise in [-amplitude, amplitude].
inline audio::AudioBuffer white_noise(double seconds, std::uint64_t seed, int rate = audio::kCanonicalRate,
                                      double amplitude = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<float> s(static_cast<std::size_t>(std::llround(seconds * rate)));
  for (float& v : s) v = static_cast<float>(dist(rng));
  return audio::AudioBuffer(std::move(s), rate);
}

/// Speech proxy: a 1/k-weighted harmonic series on `f0_hz` (harmonics up
/// to 4 kHz) with a 4 Hz syllabic amplitude envelope.
inline audio::AudioBuffer speech_proxy(double seconds, double f0_hz = 150.0, int rate = audio::kCanonicalRate,
                                       double peak = 0.5) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  std::vector<float> s(n);
  const int harmonics = static_cast<int>(4000.0 / f0_hz);
  double norm = 0.0;
  for (int k = 1; k <= harmonics; ++k) norm += 1.0 / k;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    double v = 0.0;
    for (int k = 1; k <= harmonics; ++k) v += std::sin(2.0 * std::numbers::pi * f0_hz * k * t) / k;
    const double envelope = 0.15 + 0.85 * (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * 4.0 * t));
    s[i] = static_cast<float>(peak * envelope * v / norm * 2.0);
  }
  return audio::AudioBuffer(std::move(s), rate);
}

inline audio::AudioBuffer concat(std::initializer_list<audio::AudioBuffer> parts) {
  audio::AudioBuffer out;
  out.sample_rate = parts.begin()->sample_rate;
  for (const auto& p : parts) out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
  return out;
}

/// Number of sign changes, used as an independent frequency measurement.
inline std::size_t zero_crossings(const std::vector<float>& s) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] >= 0.0f) != (s[i - 1] >= 0.0f)) ++c;
  }
  return c;
}

}  // namespace pitchside::testing
