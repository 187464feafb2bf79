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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"
#include "pitchside/corpus/emotion.hpp"

namespace pitchside::serve {

using corpus::EmotionLabel;

enum class BackendKind { kStub, kRemote };

std::string_view to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view text);

struct StubConfig {
  double char_duration_ms = 90.0;
  double f0_neutral = 120.0;
  double f0_excited = 180.0;
  double f0_very_excited = 240.0;
  double amplitude = 0.3;
  double fade_ms = 10.0;

  double base_f0(std::optional<EmotionLabel> emotion) const;
  /// Throws kConfigError.
  void validate() const;
};

struct RemoteBackendConfig {
  std::string endpoint;  // http://host:port/path
  int timeout_ms = 10000;

  void validate() const;
};

struct BackendConfig {
  BackendKind kind = BackendKind::kStub;
  StubConfig stub;
  RemoteBackendConfig remote;

  void validate() const;
};

/// Text (already vowelized) plus optional emotion in, mono audio out.
/// Implementations must be safe to call from several threads at once.
class SynthBackend {
 public:
  virtual ~SynthBackend() = default;
  virtual std::string_view name() const = 0;
  virtual audio::AudioBuffer synthesize(const std::string& text, std::optional<EmotionLabel> emotion) const = 0;
};

/// Deterministic stand-in for a neural synthesizer. Each character cluster
/// (a base character plus its combining marks) becomes one tone segment of
/// char_duration_ms at base_f0(emotion) * (1 + (FNV-1a(cluster) mod 12) / 24)
/// with raised-cosine fades; whitespace becomes silence of the same length.
/// Segment k spans samples [round(k*d*rate), round((k+1)*d*rate)), so the
/// total length never drifts from n*d.
class StubBackend final : public SynthBackend {
 public:
  explicit StubBackend(StubConfig config = {});
  std::string_view name() const override { return "stub"; }
  audio::AudioBuffer synthesize(const std::string& text, std::optional<EmotionLabel> emotion) const override;

  /// Clusters the stub would voice, whitespace included.
  static std::vector<std::string> clusters(std::string_view text);
  /// Tone frequency for one cluster.
  double cluster_f0(std::string_view cluster, std::optional<EmotionLabel> emotion) const;

 private:
  StubConfig config_;
};

/// 32-bit FNV-1a over the bytes.
std::uint32_t fnv1a(std::string_view bytes);

/// POSTs {"text", "emotion"} as JSON and expects WAV bytes back; the reply
/// is resampled to 22050 Hz. Throws kBackendUnavailable on connection
/// failure, timeout or non-200, kBadBackendAudio on undecodable audio.
class RemoteBackend final : public SynthBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);
  std::string_view name() const override { return "remote"; }
  audio::AudioBuffer synthesize(const std::string& text, std::optional<EmotionLabel> emotion) const override;

 private:
  RemoteBackendConfig config_;
  std::string origin_;
  std::string target_;
};

}  // namespace pitchside::serve
