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
#include <span>
#include <vector>

#include "pitchside/audio/audio_buffer.hpp"

namespace pitchside::audio {

/// Header-level facts about a WAV file, without decoding samples.
struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::uint16_t format_tag = 0;
  std::size_t frames = 0;

  double duration_seconds() const { return static_cast<double>(frames) / sample_rate; }
};

/// Reads RIFF/WAVE PCM16 or IEEE float32, 1-2 channels, down-mixed to mono.
/// Throws Error{kIoError, kCorruptHeader, kUnsupportedFormat}.
AudioBuffer read_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

WavInfo probe_wav(const std::filesystem::path& path);
WavInfo probe_wav(std::span<const std::uint8_t> bytes);

/// PCM16 little-endian mono. Samples are clamped to [-1, 1] and scaled by 32767.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer);

}  // namespace pitchside::audio
