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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"
#include "pitchside/serve/backend.hpp"
#include "pitchside/text/vowelizer.hpp"

namespace pitchside::serve {

inline constexpr std::size_t kMaxTextChars = 2000;

struct NoiseConfig {
  bool enabled = true;
  /// Crowd-noise WAV; empty selects the built-in synthetic crowd bed.
  std::string path;
  double snr_db = 15.0;

  void validate() const;
};

/// Deterministic crowd-like noise: low-passed white noise under a slow
/// swell, generated from a fixed seed.
audio::AudioBuffer synthetic_crowd_noise(double seconds = 4.0, std::uint64_t seed = 0x5eed,
                                         int rate = audio::kCanonicalRate);

/// Reads the configured file (resampled to 22050 Hz) or builds the
/// synthetic bed. Throws kSilentNoiseSource for an all-zero file.
audio::AudioBuffer load_noise(const NoiseConfig& config);

struct SynthesisRequest {
  std::string text;
  std::optional<EmotionLabel> emotion;
  std::optional<double> snr_db;
  bool no_noise = false;
  std::optional<std::string> backend;
};

struct SynthesisResponse {
  std::vector<std::uint8_t> wav;  // PCM16 mono 22050 Hz
  std::string normalized_text;
  std::string vowelized_text;
  bool vowelized = false;
  /// "ok", "passthrough" (offline mode) or the error code that forced a
  /// fallback, e.g. "VowelizerTimeout".
  std::string vowelizer_status;
  std::string backend;
  double duration_s = 0.0;
  std::optional<double> snr_db;  // nullopt when no noise was mixed
};

/// normalize -> vowelize (falls back to the normalized text on any
/// vowelizer error) -> backend -> crowd-noise mix -> WAV. Holds no
/// per-request state; safe to call concurrently.
class Gateway {
 public:
  Gateway(std::shared_ptr<text::Vowelizer> vowelizer,
          std::map<std::string, std::shared_ptr<const SynthBackend>> backends, std::string default_backend,
          NoiseConfig noise);

  /// Throws kInvalidRequest, kBackendUnavailable, kBadBackendAudio.
  SynthesisResponse synthesize(const SynthesisRequest& request) const;

  const text::Vowelizer& vowelizer() const { return *vowelizer_; }
  std::vector<std::string> backend_names() const;
  const std::string& default_backend() const { return default_backend_; }

 private:
  std::shared_ptr<text::Vowelizer> vowelizer_;
  std::map<std::string, std::shared_ptr<const SynthBackend>> backends_;
  std::string default_backend_;
  NoiseConfig noise_config_;
  audio::AudioBuffer noise_;
};

}  // namespace pitchside::serve
