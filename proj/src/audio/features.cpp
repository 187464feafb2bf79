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

#include "pitchside/audio/features.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"

namespace pitchside::audio {
namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class MagnitudeSpectrum {
 public:
  explicit MagnitudeSpectrum(std::size_t n)
      : n_(n),
        in_(fftw_alloc_real(n)),
        out_(fftw_alloc_complex(n / 2 + 1)),
        window_(n) {
    {
      std::lock_guard lock(planner_mutex());
      plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
    }
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      window_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    }
  }

  ~MagnitudeSpectrum() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }

  MagnitudeSpectrum(const MagnitudeSpectrum&) = delete;
  MagnitudeSpectrum& operator=(const MagnitudeSpectrum&) = delete;

  double flatness(std::span<const float> frame) {
    for (std::size_t i = 0; i < n_; ++i) in_[i] = window_[i] * frame[i];
    fftw_execute(plan_);
    const std::size_t bins = n_ / 2;
    if (bins == 0) return 0.0;
    double log_sum = 0.0;
    double lin_sum = 0.0;
    for (std::size_t k = 1; k <= bins; ++k) {
      const double mag = std::hypot(out_[k][0], out_[k][1]);
      lin_sum += mag;
      log_sum += std::log(std::max(mag, 1e-300));
    }
    const double arith = lin_sum / static_cast<double>(bins);
    if (arith < 1e-12) return 0.0;
    const double geo = std::exp(log_sum / static_cast<double>(bins));
    return std::clamp(geo / arith, 0.0, 1.0);
  }

 private:
  std::size_t n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_{};
  std::vector<double> window_;
};

std::size_t count_sign_changes(std::span<const float> frame) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < frame.size(); ++i) {
    if ((frame[i] >= 0.0f) != (frame[i - 1] >= 0.0f)) ++count;
  }
  return count;
}

}  // namespace

Framing Framing::make(double frame_len_ms, double hop_ms, int sample_rate) {
  if (!(frame_len_ms > 0.0) || !(hop_ms > 0.0) || sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "framing parameters must be positive");
  }
  if (hop_ms > frame_len_ms) {
    throw Error(ErrorCode::kInvalidArgument, "hop must not exceed frame length");
  }
  Framing f;
  f.frame_len_ms = frame_len_ms;
  f.hop_ms = hop_ms;
  f.sample_rate = sample_rate;
  f.length = std::max<std::size_t>(1, samples_for_ms(frame_len_ms, sample_rate));
  f.hop = std::max<std::size_t>(1, samples_for_ms(hop_ms, sample_rate));
  return f;
}

std::size_t Framing::frame_count(std::size_t n) const {
  if (n < length) return 0;
  return (n - length) / hop + 1;
}

FeatureTrack frame_features(const AudioBuffer& buffer, double frame_len_ms, double hop_ms) {
  const Framing framing = Framing::make(frame_len_ms, hop_ms, buffer.sample_rate);
  const std::size_t frames = framing.frame_count(buffer.size());
  if (frames == 0) {
    throw Error(ErrorCode::kBufferTooShort,
                std::to_string(buffer.size()) + " samples is shorter than one frame of " +
                    std::to_string(framing.length));
  }

  const auto& k = simd::active();
  MagnitudeSpectrum spectrum(framing.length);
  FeatureTrack track;
  track.framing = framing;
  track.duration_s = buffer.duration_seconds();
  track.energy_db.reserve(frames);
  track.zcr.reserve(frames);
  track.spectral_flatness.reserve(frames);

  const std::span<const float> all = buffer.view();
  for (std::size_t i = 0; i < frames; ++i) {
    const auto frame = all.subspan(i * framing.hop, framing.length);
    const double mean_sq = k.sum_squares(frame) / static_cast<double>(framing.length);
    track.energy_db.push_back(10.0 * std::log10(mean_sq + kEnergyFloor));
    track.zcr.push_back(static_cast<double>(count_sign_changes(frame)));
    track.spectral_flatness.push_back(spectrum.flatness(frame));
  }
  return track;
}

}  // namespace pitchside::audio
