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

#include "pitchside/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "pitchside/error.hpp"

namespace pitchside::audio {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr double kPcm16Scale = 32767.0;

std::uint16_t le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

struct Parsed {
  WavInfo info;
  std::span<const std::uint8_t> data;
};

Parsed parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kCorruptHeader, "missing RIFF/WAVE signature");
  }
  std::optional<WavInfo> fmt;
  std::optional<std::span<const std::uint8_t>> data;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    const std::uint32_t size = le32(hdr + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw Error(ErrorCode::kCorruptHeader, "chunk extends past end of file");
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) throw Error(ErrorCode::kCorruptHeader, "fmt chunk too small");
      const std::uint8_t* f = bytes.data() + body;
      WavInfo info;
      info.format_tag = le16(f);
      info.channels = le16(f + 2);
      info.sample_rate = static_cast<int>(le32(f + 4));
      info.bits_per_sample = le16(f + 14);
      if (info.format_tag == kFormatExtensible) {
        if (size < 40) throw Error(ErrorCode::kCorruptHeader, "extensible fmt chunk too small");
        info.format_tag = le16(f + 24);  // first two bytes of the sub-format GUID
      }
      fmt = info;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.subspan(body, size);
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw Error(ErrorCode::kCorruptHeader, "no fmt chunk");
  if (!data) throw Error(ErrorCode::kCorruptHeader, "no data chunk");

  WavInfo info = *fmt;
  const bool pcm16 = info.format_tag == kFormatPcm && info.bits_per_sample == 16;
  const bool f32 = info.format_tag == kFormatFloat && info.bits_per_sample == 32;
  if (info.format_tag != kFormatPcm && info.format_tag != kFormatFloat) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "compression code " + std::to_string(info.format_tag));
  }
  if (!pcm16 && !f32) {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::to_string(info.bits_per_sample) + "-bit samples for code " +
                    std::to_string(info.format_tag));
  }
  if (info.channels < 1 || info.channels > 2) {
    throw Error(ErrorCode::kUnsupportedFormat, std::to_string(info.channels) + " channels");
  }
  if (info.sample_rate <= 0) throw Error(ErrorCode::kCorruptHeader, "sample rate is zero");
  const std::size_t frame_bytes = static_cast<std::size_t>(info.channels) * (info.bits_per_sample / 8);
  info.frames = data->size() / frame_bytes;
  return {info, *data};
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path.string());
  return bytes;
}

float clamp_unit(double v) {
  if (!std::isfinite(v)) return v > 0 ? 1.0f : (v < 0 ? -1.0f : 0.0f);
  return static_cast<float>(std::clamp(v, -1.0, 1.0));
}

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  const Parsed parsed = parse(bytes);
  const WavInfo& info = parsed.info;
  std::vector<float> mono(info.frames);
  const std::uint8_t* p = parsed.data.data();
  const int channels = info.channels;
  for (std::size_t i = 0; i < info.frames; ++i) {
    double sum = 0.0;
    for (int c = 0; c < channels; ++c) {
      if (info.format_tag == kFormatPcm) {
        const auto raw = static_cast<std::int16_t>(le16(p));
        sum += raw / kPcm16Scale;
        p += 2;
      } else {
        const std::uint32_t bits = le32(p);
        float v;
        std::memcpy(&v, &bits, sizeof v);
        sum += v;
        p += 4;
      }
    }
    mono[i] = clamp_unit(sum / channels);
  }
  return AudioBuffer(std::move(mono), info.sample_rate);
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  return decode_wav(bytes);
}

WavInfo probe_wav(std::span<const std::uint8_t> bytes) { return parse(bytes).info; }

WavInfo probe_wav(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  return parse(bytes).info;
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buffer) {
  const auto data_bytes = static_cast<std::uint32_t>(buffer.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(buffer.sample_rate));
  put32(out, static_cast<std::uint32_t>(buffer.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_bytes);
  for (float s : buffer.samples) {
    const double clamped = clamp_unit(s);
    const auto q = static_cast<std::int16_t>(std::lround(clamped * kPcm16Scale));
    put16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  const auto bytes = encode_wav(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

}  // namespace pitchside::audio
