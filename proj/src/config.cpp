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

#include "pitchside/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "pitchside/error.hpp"

namespace pitchside {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kConfigError, (path.empty() ? "/" : path) + ": " + what);
}

/// Walks one JSON object, dispatching known keys and rejecting the rest.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  void on(const std::string& key, const std::function<void(const json&, const std::string&)>& handler) {
    handlers_.emplace_back(key, handler);
  }

  void run() {
    for (const auto& [key, value] : j_.items()) {
      bool handled = false;
      for (const auto& [k, h] : handlers_) {
        if (k == key) {
          h(value, path_ + "/" + key);
          handled = true;
        }
      }
      if (!handled) fail(path_ + "/" + key, "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::pair<std::string, std::function<void(const json&, const std::string&)>>> handlers_;
};

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t count(const json& v, const std::string& path) {
  const std::int64_t n = integer(v, path);
  if (n < 0) fail(path, "must be >= 0");
  return static_cast<std::size_t>(n);
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

template <typename Parse>
auto enum_value(const json& v, const std::string& path, Parse parse) {
  const std::string s = string(v, path);
  try {
    return parse(s);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

void read_vad(const json& j, const std::string& path, vad::VadConfig& c) {
  Section s(j, path);
  s.on("energy_floor_db", [&](const json& v, const std::string& p) { c.energy_floor_db = number(v, p); });
  s.on("flatness_music_max", [&](const json& v, const std::string& p) { c.flatness_music_max = number(v, p); });
  s.on("music_window_frames", [&](const json& v, const std::string& p) { c.music_window_frames = count(v, p); });
  s.on("music_flatness_std_max", [&](const json& v, const std::string& p) { c.music_flatness_std_max = number(v, p); });
  s.on("music_energy_std_max_db",
       [&](const json& v, const std::string& p) { c.music_energy_std_max_db = number(v, p); });
  s.on("zcr_speech_min_hz", [&](const json& v, const std::string& p) { c.zcr_speech_min_hz = number(v, p); });
  s.on("zcr_speech_max_hz", [&](const json& v, const std::string& p) { c.zcr_speech_max_hz = number(v, p); });
  s.on("flatness_speech_max", [&](const json& v, const std::string& p) { c.flatness_speech_max = number(v, p); });
  s.on("min_segment_s", [&](const json& v, const std::string& p) { c.min_segment_s = number(v, p); });
  s.on("smoothing_frames", [&](const json& v, const std::string& p) { c.smoothing_frames = count(v, p); });
  s.run();
}

void read_align(const json& j, const std::string& path, AlignConfig& c) {
  Section s(j, path);
  s.on("stay_mode", [&](const json& v, const std::string& p) { c.stay = enum_value(v, p, align::parse_stay_mode); });
  s.on("window", [&](const json& v, const std::string& p) { c.window = count(v, p); });
  s.on("min_score", [&](const json& v, const std::string& p) {
    if (v.is_null()) {
      c.min_score.reset();
    } else {
      c.min_score = number(v, p);
    }
  });
  s.run();
}

void read_vowelizer(const json& j, const std::string& path, text::VowelizerConfig& c) {
  Section s(j, path);
  s.on("mode", [&](const json& v, const std::string& p) { c.mode = enum_value(v, p, text::parse_vowelizer_mode); });
  s.on("endpoint", [&](const json& v, const std::string& p) { c.endpoint = string(v, p); });
  s.on("timeout_ms", [&](const json& v, const std::string& p) { c.timeout_ms = static_cast<int>(integer(v, p)); });
  s.on("cache_capacity", [&](const json& v, const std::string& p) { c.cache_capacity = count(v, p); });
  s.on("max_in_flight", [&](const json& v, const std::string& p) { c.max_in_flight = count(v, p); });
  s.run();
}

void read_split(const json& j, const std::string& path, corpus::SplitSpec& c) {
  Section s(j, path);
  s.on("n_dev", [&](const json& v, const std::string& p) { c.n_dev = count(v, p); });
  s.on("n_test", [&](const json& v, const std::string& p) { c.n_test = count(v, p); });
  s.on("seed", [&](const json& v, const std::string& p) {
    if (!v.is_number_unsigned()) fail(p, "expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  });
  s.on("strategy",
       [&](const json& v, const std::string& p) { c.strategy = enum_value(v, p, corpus::parse_split_strategy); });
  s.run();
}

void read_emotion(const json& j, const std::string& path, corpus::EmotionThresholds& c) {
  Section s(j, path);
  s.on("excited_hz", [&](const json& v, const std::string& p) { c.excited_hz = number(v, p); });
  s.on("very_excited_hz", [&](const json& v, const std::string& p) { c.very_excited_hz = number(v, p); });
  s.run();
}

void read_serve(const json& j, const std::string& path, ServeConfig& c) {
  Section s(j, path);
  s.on("host", [&](const json& v, const std::string& p) { c.host = string(v, p); });
  s.on("port", [&](const json& v, const std::string& p) { c.port = static_cast<int>(integer(v, p)); });
  s.on("threads", [&](const json& v, const std::string& p) { c.threads = count(v, p); });
  s.on("static_dir", [&](const json& v, const std::string& p) { c.static_dir = string(v, p); });
  s.on("backend", [&](const json& v, const std::string& p) {
    c.backend.kind = enum_value(v, p, serve::parse_backend_kind);
  });
  s.on("remote", [&](const json& v, const std::string& p) {
    Section r(v, p);
    r.on("endpoint", [&](const json& x, const std::string& q) { c.backend.remote.endpoint = string(x, q); });
    r.on("timeout_ms",
         [&](const json& x, const std::string& q) { c.backend.remote.timeout_ms = static_cast<int>(integer(x, q)); });
    r.run();
  });
  s.on("stub", [&](const json& v, const std::string& p) {
    auto& st = c.backend.stub;
    Section r(v, p);
    r.on("char_duration_ms", [&](const json& x, const std::string& q) { st.char_duration_ms = number(x, q); });
    r.on("amplitude", [&](const json& x, const std::string& q) { st.amplitude = number(x, q); });
    r.on("fade_ms", [&](const json& x, const std::string& q) { st.fade_ms = number(x, q); });
    r.on("base_f0", [&](const json& x, const std::string& q) {
      Section f(x, q);
      f.on("neutral", [&](const json& y, const std::string& w) { st.f0_neutral = number(y, w); });
      f.on("excited", [&](const json& y, const std::string& w) { st.f0_excited = number(y, w); });
      f.on("very_excited", [&](const json& y, const std::string& w) { st.f0_very_excited = number(y, w); });
      f.run();
    });
    r.run();
  });
  s.on("noise", [&](const json& v, const std::string& p) {
    Section r(v, p);
    r.on("enabled", [&](const json& x, const std::string& q) { c.noise.enabled = boolean(x, q); });
    r.on("path", [&](const json& x, const std::string& q) { c.noise.path = string(x, q); });
    r.on("snr_db", [&](const json& x, const std::string& q) { c.noise.snr_db = number(x, q); });
    r.run();
  });
  s.run();
}

std::string redact_url(const std::string& url) {
  if (url.empty()) return url;
  std::string out = url;
  const std::size_t scheme = out.find("://");
  const std::size_t host_begin = scheme == std::string::npos ? 0 : scheme + 3;
  const std::size_t host_end = out.find('/', host_begin);
  const std::size_t at = out.find('@', host_begin);
  if (at != std::string::npos && (host_end == std::string::npos || at < host_end)) {
    out.replace(host_begin, at + 1 - host_begin, "***@");
  }
  if (const std::size_t q = out.find('?'); q != std::string::npos) out = out.substr(0, q) + "?***";
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (sample_rate != audio::kCanonicalRate) {
    throw Error(ErrorCode::kConfigError, "sample_rate must be 22050 (the canonical corpus rate)");
  }
  vad.validate();
  if (align.window == 0) throw Error(ErrorCode::kConfigError, "align window must be >= 1");
  if (align.min_score && *align.min_score > 0.0) throw Error(ErrorCode::kConfigError, "align min_score must be <= 0");
  vowelizer.validate();
  emotion.validate();
  if (serve.port < 0 || serve.port > 65535) throw Error(ErrorCode::kConfigError, "serve port out of range");
  if (serve.threads == 0) throw Error(ErrorCode::kConfigError, "serve threads must be > 0");
  serve.backend.validate();
  serve.noise.validate();
}

PipelineConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, std::string("malformed JSON: ") + e.what());
  }
  PipelineConfig c;
  Section root(j, "");
  root.on("sample_rate", [&](const json& v, const std::string& p) { c.sample_rate = static_cast<int>(integer(v, p)); });
  root.on("vad", [&](const json& v, const std::string& p) { read_vad(v, p, c.vad); });
  root.on("align", [&](const json& v, const std::string& p) { read_align(v, p, c.align); });
  root.on("vowelizer", [&](const json& v, const std::string& p) { read_vowelizer(v, p, c.vowelizer); });
  root.on("split", [&](const json& v, const std::string& p) { read_split(v, p, c.split); });
  root.on("emotion", [&](const json& v, const std::string& p) { read_emotion(v, p, c.emotion); });
  root.on("serve", [&](const json& v, const std::string& p) { read_serve(v, p, c.serve); });
  root.run();
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
}

PipelineConfig resolve_config(const std::optional<std::string>& cli_path) {
  if (cli_path && !cli_path->empty()) return load_config(*cli_path);
  if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') return load_config(env);
  PipelineConfig c;
  c.validate();
  return c;
}

std::string config_to_json(const PipelineConfig& c, bool redact) {
  auto url = [redact](const std::string& u) { return redact ? redact_url(u) : u; };
  const auto& st = c.serve.backend.stub;
  json j{
      {"sample_rate", c.sample_rate},
      {"vad",
       {{"energy_floor_db", c.vad.energy_floor_db},
        {"flatness_music_max", c.vad.flatness_music_max},
        {"music_window_frames", c.vad.music_window_frames},
        {"music_flatness_std_max", c.vad.music_flatness_std_max},
        {"music_energy_std_max_db", c.vad.music_energy_std_max_db},
        {"zcr_speech_min_hz", c.vad.zcr_speech_min_hz},
        {"zcr_speech_max_hz", c.vad.zcr_speech_max_hz},
        {"flatness_speech_max", c.vad.flatness_speech_max},
        {"min_segment_s", c.vad.min_segment_s},
        {"smoothing_frames", c.vad.smoothing_frames}}},
      {"align",
       {{"stay_mode", align::to_string(c.align.stay)},
        {"window", c.align.window},
        {"min_score", c.align.min_score ? json(*c.align.min_score) : json(nullptr)}}},
      {"vowelizer",
       {{"mode", text::to_string(c.vowelizer.mode)},
        {"endpoint", url(c.vowelizer.endpoint)},
        {"timeout_ms", c.vowelizer.timeout_ms},
        {"cache_capacity", c.vowelizer.cache_capacity},
        {"max_in_flight", c.vowelizer.max_in_flight}}},
      {"split",
       {{"n_dev", c.split.n_dev},
        {"n_test", c.split.n_test},
        {"seed", c.split.seed},
        {"strategy", corpus::to_string(c.split.strategy)}}},
      {"emotion", {{"excited_hz", c.emotion.excited_hz}, {"very_excited_hz", c.emotion.very_excited_hz}}},
      {"serve",
       {{"host", c.serve.host},
        {"port", c.serve.port},
        {"threads", c.serve.threads},
        {"static_dir", c.serve.static_dir},
        {"backend", serve::to_string(c.serve.backend.kind)},
        {"remote", {{"endpoint", url(c.serve.backend.remote.endpoint)}, {"timeout_ms", c.serve.backend.remote.timeout_ms}}},
        {"stub",
         {{"char_duration_ms", st.char_duration_ms},
          {"amplitude", st.amplitude},
          {"fade_ms", st.fade_ms},
          {"base_f0", {{"neutral", st.f0_neutral}, {"excited", st.f0_excited}, {"very_excited", st.f0_very_excited}}}}},
        {"noise", {{"enabled", c.serve.noise.enabled}, {"path", c.serve.noise.path}, {"snr_db", c.serve.noise.snr_db}}}}}};
  return j.dump(2);
}

}  // namespace pitchside
