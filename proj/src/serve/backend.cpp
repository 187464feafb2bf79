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

#include "pitchside/serve/backend.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "httplib.h"
#include "json.hpp"
#include "pitchside/audio/resample.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/error.hpp"
#include "pitchside/net/url.hpp"
#include "pitchside/text/script.hpp"
#include "pitchside/text/utf8.hpp"

namespace pitchside::serve {
namespace {

bool is_combining(char32_t cp) {
  return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x0610 && cp <= 0x061A) || (cp >= 0x064B && cp <= 0x065F) ||
         cp == 0x0670 || (cp >= 0x06D6 && cp <= 0x06DC) || (cp >= 0x06DF && cp <= 0x06E4) || cp == 0x06E7 ||
         cp == 0x06E8 || (cp >= 0x06EA && cp <= 0x06ED);
}

}  // namespace

std::string_view to_string(BackendKind kind) { return kind == BackendKind::kStub ? "stub" : "remote"; }

BackendKind parse_backend_kind(std::string_view text) {
  if (text == "stub") return BackendKind::kStub;
  if (text == "remote") return BackendKind::kRemote;
  throw Error(ErrorCode::kConfigError, "unknown backend '" + std::string(text) + "'");
}

double StubConfig::base_f0(std::optional<EmotionLabel> emotion) const {
  switch (emotion.value_or(EmotionLabel::kNeutral)) {
    case EmotionLabel::kNeutral: return f0_neutral;
    case EmotionLabel::kExcited: return f0_excited;
    case EmotionLabel::kVeryExcited: return f0_very_excited;
  }
  return f0_neutral;
}

void StubConfig::validate() const {
  if (!(char_duration_ms > 0.0)) throw Error(ErrorCode::kConfigError, "stub char_duration_ms must be > 0");
  if (!(fade_ms >= 0.0 && 2.0 * fade_ms <= char_duration_ms)) {
    throw Error(ErrorCode::kConfigError, "stub fade_ms must be in [0, char_duration_ms / 2]");
  }
  for (double f : {f0_neutral, f0_excited, f0_very_excited}) {
    // The highest cluster multiplier is 1 + 11/24.
    if (!(f > 0.0 && f * (1.0 + 11.0 / 24.0) < audio::kCanonicalRate / 2.0)) {
      throw Error(ErrorCode::kConfigError, "stub base_f0 out of range");
    }
  }
  if (!(amplitude > 0.0 && amplitude <= 1.0)) throw Error(ErrorCode::kConfigError, "stub amplitude must be in (0, 1]");
}

void RemoteBackendConfig::validate() const {
  if (timeout_ms <= 0) throw Error(ErrorCode::kConfigError, "remote backend timeout_ms must be > 0");
  net::parse_http_url(endpoint);
}

void BackendConfig::validate() const {
  stub.validate();
  if (kind == BackendKind::kRemote) remote.validate();
}

std::uint32_t fnv1a(std::string_view bytes) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

StubBackend::StubBackend(StubConfig config) : config_(config) { config_.validate(); }

std::vector<std::string> StubBackend::clusters(std::string_view text) {
  std::vector<std::string> out;
  for (const text::CodePoint& cp : text::decode_utf8(text)) {
    const std::string_view bytes = text.substr(cp.offset, cp.length);
    if (is_combining(cp.value) && !out.empty() && !text::is_space(text::to_u32(out.back()).front())) {
      out.back().append(bytes);
    } else {
      out.emplace_back(bytes);
    }
  }
  return out;
}

double StubBackend::cluster_f0(std::string_view cluster, std::optional<EmotionLabel> emotion) const {
  return config_.base_f0(emotion) * (1.0 + static_cast<double>(fnv1a(cluster) % 12) / 24.0);
}

audio::AudioBuffer StubBackend::synthesize(const std::string& text, std::optional<EmotionLabel> emotion) const {
  const int rate = audio::kCanonicalRate;
  const std::vector<std::string> parts = clusters(text);
  const double seg_samples = config_.char_duration_ms * rate / 1000.0;
  auto boundary = [&](std::size_t k) { return static_cast<std::size_t>(std::llround(k * seg_samples)); };
  const auto fade = static_cast<std::size_t>(std::llround(config_.fade_ms * rate / 1000.0));

  std::vector<float> samples(boundary(parts.size()), 0.0f);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (text::is_space(text::to_u32(parts[k]).front())) continue;
    const double f0 = cluster_f0(parts[k], emotion);
    const std::size_t begin = boundary(k);
    const std::size_t len = boundary(k + 1) - begin;
    for (std::size_t i = 0; i < len; ++i) {
      double gain = config_.amplitude;
      if (fade > 0 && i < fade) gain *= 0.5 * (1.0 - std::cos(std::numbers::pi * i / fade));
      if (fade > 0 && len - 1 - i < fade) gain *= 0.5 * (1.0 - std::cos(std::numbers::pi * (len - 1 - i) / fade));
      samples[begin + i] = static_cast<float>(gain * std::sin(2.0 * std::numbers::pi * f0 * i / rate));
    }
  }
  return audio::AudioBuffer(std::move(samples), rate);
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  config_.validate();
  net::HttpUrl url = net::parse_http_url(config_.endpoint);
  origin_ = std::move(url.origin);
  target_ = std::move(url.target);
}

audio::AudioBuffer RemoteBackend::synthesize(const std::string& text, std::optional<EmotionLabel> emotion) const {
  nlohmann::json body;
  body["text"] = text;
  body["emotion"] = emotion ? nlohmann::json(std::string(corpus::to_string(*emotion))) : nlohmann::json(nullptr);

  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  const httplib::Result res = client.Post(target_, body.dump(), "application/json");
  if (!res) throw Error(ErrorCode::kBackendUnavailable, origin_ + ": " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error(ErrorCode::kBackendUnavailable, origin_ + " answered " + std::to_string(res->status));

  audio::AudioBuffer audio;
  try {
    const auto* data = reinterpret_cast<const std::uint8_t*>(res->body.data());
    audio = audio::decode_wav(std::span<const std::uint8_t>(data, res->body.size()));
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadBackendAudio, e.what());
  }
  if (audio.samples.empty()) throw Error(ErrorCode::kBadBackendAudio, "backend returned no samples");
  if (audio.sample_rate != audio::kCanonicalRate) audio = audio::resample(audio, audio::kCanonicalRate);
  return audio;
}

}  // namespace pitchside::serve
