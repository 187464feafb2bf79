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

#include "pitchside/serve/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pitchside/audio/mix.hpp"
#include "pitchside/audio/resample.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"
#include "pitchside/text/script.hpp"
#include "pitchside/text/utf8.hpp"

namespace pitchside::serve {

void NoiseConfig::validate() const {
  if (!std::isfinite(snr_db)) throw Error(ErrorCode::kConfigError, "noise snr_db must be finite");
}

audio::AudioBuffer synthetic_crowd_noise(double seconds, std::uint64_t seed, int rate) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  std::mt19937_64 rng(seed);
  const double a = 1.0 - std::exp(-2.0 * std::numbers::pi * 1200.0 / rate);
  double lp1 = 0.0, lp2 = 0.0;
  std::vector<float> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double white = static_cast<double>(rng() >> 11) * 0x1p-53 * 2.0 - 1.0;
    lp1 += a * (white - lp1);
    lp2 += a * (lp1 - lp2);
    const double t = static_cast<double>(i) / rate;
    const double swell = 0.7 + 0.2 * std::sin(2.0 * std::numbers::pi * 0.35 * t) +
                         0.1 * std::sin(2.0 * std::numbers::pi * 1.3 * t + 1.0);
    s[i] = static_cast<float>(lp2 * swell);
  }
  const float peak = simd::active().max_abs(s);
  if (peak > 0.0f) {
    for (float& v : s) v = static_cast<float>(0.5 * v / peak);
  }
  return audio::AudioBuffer(std::move(s), rate);
}

audio::AudioBuffer load_noise(const NoiseConfig& config) {
  audio::AudioBuffer noise = config.path.empty() ? synthetic_crowd_noise() : audio::read_wav(config.path);
  if (noise.sample_rate != audio::kCanonicalRate) noise = audio::resample(noise, audio::kCanonicalRate);
  if (noise.samples.empty() || simd::active().max_abs(noise.samples) == 0.0f) {
    throw Error(ErrorCode::kSilentNoiseSource, "crowd noise '" + config.path + "' is silent");
  }
  return noise;
}

Gateway::Gateway(std::shared_ptr<text::Vowelizer> vowelizer,
                 std::map<std::string, std::shared_ptr<const SynthBackend>> backends, std::string default_backend,
                 NoiseConfig noise)
    : vowelizer_(std::move(vowelizer)),
      backends_(std::move(backends)),
      default_backend_(std::move(default_backend)),
      noise_config_(std::move(noise)) {
  if (!vowelizer_) throw Error(ErrorCode::kConfigError, "gateway needs a vowelizer");
  if (!backends_.count(default_backend_)) {
    throw Error(ErrorCode::kConfigError, "default backend '" + default_backend_ + "' is not configured");
  }
  noise_config_.validate();
  if (noise_config_.enabled) noise_ = load_noise(noise_config_);
}

std::vector<std::string> Gateway::backend_names() const {
  std::vector<std::string> names;
  for (const auto& [name, backend] : backends_) names.push_back(name);
  return names;
}

SynthesisResponse Gateway::synthesize(const SynthesisRequest& request) const {
  if (!text::is_valid_utf8(request.text)) throw Error(ErrorCode::kInvalidRequest, "text is not valid UTF-8");
  const std::size_t chars = text::utf8_length(request.text);
  if (chars < 1 || chars > kMaxTextChars) {
    throw Error(ErrorCode::kInvalidRequest,
                "text must have 1.." + std::to_string(kMaxTextChars) + " characters, got " + std::to_string(chars));
  }
  if (request.snr_db && !std::isfinite(*request.snr_db)) {
    throw Error(ErrorCode::kInvalidRequest, "snr_db must be finite (use no_noise to disable mixing)");
  }
  const std::string backend_name = request.backend.value_or(default_backend_);
  const auto backend = backends_.find(backend_name);
  if (backend == backends_.end()) throw Error(ErrorCode::kInvalidRequest, "unknown backend '" + backend_name + "'");

  SynthesisResponse out;
  out.normalized_text = text::normalize(request.text);
  if (out.normalized_text.empty()) throw Error(ErrorCode::kInvalidRequest, "text is empty after normalization");

  if (vowelizer_->config().mode == text::VowelizerMode::kOfflinePassthrough) {
    out.vowelized_text = out.normalized_text;
    out.vowelizer_status = "passthrough";
  } else {
    try {
      out.vowelized_text = vowelizer_->vowelize(out.normalized_text);
      out.vowelized = true;
      out.vowelizer_status = "ok";
    } catch (const text::VowelizerError& e) {
      out.vowelized_text = e.original_text();
      out.vowelizer_status = std::string(to_string(e.code()));
    }
  }

  audio::AudioBuffer speech = backend->second->synthesize(out.vowelized_text, request.emotion);
  if (speech.sample_rate != audio::kCanonicalRate) speech = audio::resample(speech, audio::kCanonicalRate);
  out.backend = backend_name;

  if (noise_config_.enabled && !request.no_noise) {
    const double snr = request.snr_db.value_or(noise_config_.snr_db);
    speech = audio::mix_noise(speech, noise_, snr);
    out.snr_db = snr;
  }
  out.duration_s = speech.duration_seconds();
  out.wav = audio::encode_wav(speech);
  return out;
}

}  // namespace pitchside::serve
