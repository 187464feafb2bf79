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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "mock_servers.hpp"
#include "pitchside/audio/pitch.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/error.hpp"
#include "pitchside/net/url.hpp"
#include "pitchside/serve/backend.hpp"
#include "pitchside/serve/gateway.hpp"
#include "pitchside/serve/http_service.hpp"
#include "pitchside/text/utf8.hpp"

using namespace pitchside;
using namespace pitchside::serve;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pitchside::Error");
  return ErrorCode::kIoError;
}

// Stub length law, written out independently: n segments of 90 ms at 22050 Hz.
std::size_t expected_samples(std::size_t n_segments) {
  return static_cast<std::size_t>(std::llround(n_segments * 0.090 * 22050.0));
}

audio::AudioBuffer decode(const std::vector<std::uint8_t>& wav) { return audio::decode_wav(wav); }

audio::AudioBuffer decode(const std::string& wav) {
  return audio::decode_wav(std::span(reinterpret_cast<const std::uint8_t*>(wav.data()), wav.size()));
}

std::shared_ptr<text::Vowelizer> offline() { return std::make_shared<text::Vowelizer>(text::VowelizerConfig{}); }

std::shared_ptr<text::Vowelizer> remote(const std::string& endpoint, int timeout_ms = 2000) {
  text::VowelizerConfig cfg;
  cfg.mode = text::VowelizerMode::kRemote;
  cfg.endpoint = endpoint;
  cfg.timeout_ms = timeout_ms;
  return std::make_shared<text::Vowelizer>(cfg);
}

std::map<std::string, std::shared_ptr<const SynthBackend>> stub_only() {
  return {{"stub", std::make_shared<StubBackend>()}};
}

Gateway stub_gateway(std::shared_ptr<text::Vowelizer> v = offline(), NoiseConfig noise = {}) {
  return Gateway(std::move(v), stub_only(), "stub", noise);
}

struct RunningService {
  explicit RunningService(std::shared_ptr<const Gateway> gateway, HttpOptions options = {}) {
    options.port = 0;
    service = std::make_unique<HttpService>(std::move(gateway), options);
    port = service->bind();
    thread = std::thread([this] { service->serve(); });
  }
  ~RunningService() {
    service->stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(std::chrono::seconds(10));
    return c;
  }
  std::unique_ptr<HttpService> service;
  int port = 0;
  std::thread thread;
};

}  // namespace

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a("") == 0x811c9dc5u);
  CHECK(fnv1a("a") == 0xe40c292cu);
  CHECK(fnv1a("foobar") == 0xbf9cf968u);
}

TEST_CASE("stub output is deterministic and follows the length law") {
  const StubBackend stub;
  const auto a = stub.synthesize("هدف", std::nullopt);
  const auto b = stub.synthesize("هدف", std::nullopt);
  CHECK(a.samples == b.samples);
  CHECK(a.sample_rate == 22050);
  CHECK(a.samples.size() == expected_samples(3));
  for (std::size_t n : {1, 2, 7, 40, 123}) {
    CHECK(stub.synthesize(std::string(n, 'x'), std::nullopt).samples.size() == expected_samples(n));
  }
  // Diacritics ride on their base letter.
  CHECK(StubBackend::clusters("هَدَفَ").size() == 3);
  CHECK(stub.synthesize("هَدَفَ", std::nullopt).samples.size() == expected_samples(3));
  CHECK(stub.synthesize("هَدَفَ", std::nullopt).samples != a.samples);
  for (float v : a.samples) REQUIRE(std::fabs(v) <= 0.3f + 1e-6f);
}

TEST_CASE("a space adds one silent segment") {
  const StubBackend stub;
  const auto ab = stub.synthesize("ab", std::nullopt);
  const auto a_b = stub.synthesize("a b", std::nullopt);
  CHECK(a_b.samples.size() == expected_samples(3));
  CHECK(a_b.samples.size() - ab.samples.size() == expected_samples(3) - expected_samples(2));
  for (std::size_t i = expected_samples(1); i < expected_samples(2); ++i) REQUIRE(a_b.samples[i] == 0.0f);
  // The "a" segment is identical in both.
  for (std::size_t i = 0; i < expected_samples(1); ++i) REQUIRE(a_b.samples[i] == ab.samples[i]);
}

TEST_CASE("segment tones follow the emotion base frequency") {
  const StubBackend stub;
  for (const std::string c : {"a", "ه", "z", "٩"}) {
    const double n = stub.cluster_f0(c, corpus::EmotionLabel::kNeutral);
    CHECK(stub.cluster_f0(c, corpus::EmotionLabel::kExcited) == doctest::Approx(1.5 * n));
    CHECK(stub.cluster_f0(c, corpus::EmotionLabel::kVeryExcited) == doctest::Approx(2.0 * n));
    CHECK(stub.cluster_f0(c, std::nullopt) == n);
    const double mult = n / 120.0;
    CHECK(mult >= 1.0);
    CHECK(mult <= 1.0 + 11.0 / 24.0 + 1e-12);
    CHECK(std::fabs(mult * 24.0 - std::round(mult * 24.0)) < 1e-9);
  }
  const std::string text = "هدف رائع";
  const auto neutral = audio::estimate_f0(stub.synthesize(text, corpus::EmotionLabel::kNeutral)).mean_voiced_f0();
  const auto excited = audio::estimate_f0(stub.synthesize(text, corpus::EmotionLabel::kExcited)).mean_voiced_f0();
  REQUIRE(neutral.has_value());
  REQUIRE(excited.has_value());
  CHECK(*excited / *neutral == doctest::Approx(1.5).epsilon(0.03));
}

TEST_CASE("stub config validation") {
  StubConfig c;
  c.char_duration_ms = 0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kConfigError);
  c = {};
  c.fade_ms = 50;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kConfigError);
  c = {};
  c.f0_very_excited = 20000;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kConfigError);
  CHECK(parse_backend_kind("remote") == BackendKind::kRemote);
  CHECK(code_of([] { parse_backend_kind("vits"); }) == ErrorCode::kConfigError);
}

TEST_CASE("gateway: stub, passthrough vowelizer, default noise") {
  const Gateway g = stub_gateway();
  const SynthesisResponse r = g.synthesize({"هدف"});
  const audio::WavInfo info = audio::probe_wav(r.wav);
  CHECK(info.sample_rate == 22050);
  CHECK(info.channels == 1);
  CHECK(info.bits_per_sample == 16);
  CHECK(info.format_tag == 1);
  CHECK(std::fabs(static_cast<double>(info.frames) - 3 * 0.090 * 22050) <= 221.0);
  CHECK(info.frames == expected_samples(3));
  CHECK(r.duration_s == doctest::Approx(0.27).epsilon(1e-3));
  CHECK(r.vowelized_text == "هدف");
  CHECK_FALSE(r.vowelized);
  CHECK(r.vowelizer_status == "passthrough");
  CHECK(r.backend == "stub");
  REQUIRE(r.snr_db.has_value());
  CHECK(*r.snr_db == 15.0);
  CHECK(g.synthesize({"هدف"}).wav == r.wav);
  CHECK(g.synthesize({"  هـدف \n"}).wav == r.wav);
}

TEST_CASE("gateway mixes crowd noise at the requested SNR") {
  const Gateway g = stub_gateway();
  const StubBackend stub;
  const auto clean = stub.synthesize("هدف رائع", std::nullopt);
  for (double snr : {0.0, 10.0, 25.0}) {
    SynthesisRequest req{"هدف رائع"};
    req.snr_db = snr;
    const auto mixed = decode(g.synthesize(req).wav);
    REQUIRE(mixed.samples.size() == clean.samples.size());
    double ps = 0.0, pn = 0.0;
    for (std::size_t i = 0; i < clean.samples.size(); ++i) {
      ps += static_cast<double>(clean.samples[i]) * clean.samples[i];
      const double d = static_cast<double>(mixed.samples[i]) - clean.samples[i];
      pn += d * d;
    }
    CHECK(std::fabs(10.0 * std::log10(ps / pn) - snr) <= 0.1);
  }
}

TEST_CASE("no_noise returns the backend audio unchanged") {
  const Gateway g = stub_gateway();
  SynthesisRequest req{"هدف"};
  req.no_noise = true;
  const SynthesisResponse r = g.synthesize(req);
  CHECK_FALSE(r.snr_db.has_value());
  CHECK(r.wav == audio::encode_wav(StubBackend().synthesize("هدف", std::nullopt)));

  NoiseConfig off;
  off.enabled = false;
  const Gateway quiet = stub_gateway(offline(), off);
  CHECK(quiet.synthesize({"هدف"}).wav == r.wav);
}

TEST_CASE("gateway rejects bad requests") {
  const Gateway g = stub_gateway();
  CHECK(code_of([&] { g.synthesize({""}); }) == ErrorCode::kInvalidRequest);
  CHECK(code_of([&] { g.synthesize({"  \t ـ "}); }) == ErrorCode::kInvalidRequest);
  CHECK(code_of([&] { g.synthesize({std::string(2001, 'a')}); }) == ErrorCode::kInvalidRequest);
  CHECK_NOTHROW(g.synthesize({std::string(2000, 'a')}));
  CHECK(code_of([&] { g.synthesize({"\xFF"}); }) == ErrorCode::kInvalidRequest);
  SynthesisRequest r{"a"};
  r.backend = "vits";
  CHECK(code_of([&] { g.synthesize(r); }) == ErrorCode::kInvalidRequest);
  r.backend.reset();
  r.snr_db = std::nan("");
  CHECK(code_of([&] { g.synthesize(r); }) == ErrorCode::kInvalidRequest);
  CHECK(code_of([] { Gateway(offline(), stub_only(), "remote", NoiseConfig{}); }) == ErrorCode::kConfigError);
}

TEST_CASE("gateway with the mock vowelizer, and its outage") {
  testing::MockVowelizer mock;
  const Gateway g = stub_gateway(remote(mock.endpoint(), 200));
  const SynthesisResponse ok = g.synthesize({"هدف"});
  CHECK(ok.vowelized);
  CHECK(ok.vowelizer_status == "ok");
  CHECK(ok.vowelized_text == "هَدَفَ");
  CHECK(audio::probe_wav(ok.wav).frames == expected_samples(3));

  mock.set_fail_status(500);
  const SynthesisResponse failed = g.synthesize({"كرة"});
  CHECK_FALSE(failed.vowelized);
  CHECK(failed.vowelizer_status == "VowelizerHttpError");
  CHECK(failed.vowelized_text == "كرة");

  mock.set_fail_status(0);
  mock.set_delay_ms(500);
  const SynthesisResponse slow = g.synthesize({"مرمى"});
  CHECK(slow.vowelizer_status == "VowelizerTimeout");
  CHECK(slow.vowelized_text == "مرمى");

  mock.set_delay_ms(0);
  mock.stop();
  const SynthesisResponse down = g.synthesize({"لاعب"});
  CHECK(down.vowelizer_status == "VowelizerUnavailable");
  CHECK(down.vowelized_text == "لاعب");
  // The cached entry still serves.
  CHECK(g.synthesize({"هدف"}).vowelized);
}

TEST_CASE("remote backend: format, resampling and failures") {
  testing::MockTtsBackend native(22050, 1.0);
  testing::MockTtsBackend wide(44100, 1.0);
  RemoteBackendConfig cfg;
  cfg.endpoint = native.endpoint();
  const RemoteBackend backend(cfg);
  const auto a = backend.synthesize("هدف", corpus::EmotionLabel::kExcited);
  CHECK(a.sample_rate == 22050);
  CHECK(a.samples.size() == 22050);
  const auto body = nlohmann::json::parse(native.last_body());
  CHECK(body["text"] == "هدف");
  CHECK(body["emotion"] == "excited");
  backend.synthesize("x", std::nullopt);
  CHECK(nlohmann::json::parse(native.last_body())["emotion"].is_null());

  cfg.endpoint = wide.endpoint();
  const auto b = RemoteBackend(cfg).synthesize("هدف", std::nullopt);
  CHECK(b.sample_rate == 22050);
  CHECK(b.samples.size() == 22050);

  wide.set_fail_status(500);
  CHECK(code_of([&] { RemoteBackend(cfg).synthesize("x", std::nullopt); }) == ErrorCode::kBackendUnavailable);

  testing::MockVowelizer not_audio;
  cfg.endpoint = not_audio.endpoint();
  CHECK(code_of([&] { RemoteBackend(cfg).synthesize("x", std::nullopt); }) == ErrorCode::kBadBackendAudio);

  wide.stop();
  cfg.endpoint = wide.endpoint();
  CHECK(code_of([&] { RemoteBackend(cfg).synthesize("x", std::nullopt); }) == ErrorCode::kBackendUnavailable);

  cfg.endpoint = native.endpoint();
  std::map<std::string, std::shared_ptr<const SynthBackend>> backends = stub_only();
  backends["remote"] = std::make_shared<RemoteBackend>(cfg);
  const Gateway g(offline(), backends, "remote", NoiseConfig{});
  const auto r = g.synthesize({"هدف"});
  CHECK(r.backend == "remote");
  CHECK(audio::probe_wav(r.wav).frames == 22050);
}

TEST_CASE("crowd noise source") {
  const auto a = synthetic_crowd_noise();
  const auto b = synthetic_crowd_noise();
  CHECK(a.samples == b.samples);
  CHECK(a.sample_rate == 22050);
  CHECK(a.samples.size() == 4 * 22050);

  const fs::path dir = fs::temp_directory_path() / "pitchside_serve_test";
  fs::create_directories(dir);
  audio::AudioBuffer silent(std::vector<float>(1000, 0.0f), 16000);
  audio::write_wav(silent, dir / "silent.wav");
  NoiseConfig cfg;
  cfg.path = (dir / "silent.wav").string();
  CHECK(code_of([&] { load_noise(cfg); }) == ErrorCode::kSilentNoiseSource);
  audio::write_wav(audio::AudioBuffer(std::vector<float>(16000, 0.25f), 16000), dir / "dc.wav");
  cfg.path = (dir / "dc.wav").string();
  const auto loaded = load_noise(cfg);
  CHECK(loaded.sample_rate == 22050);
  CHECK(loaded.samples.size() == 22050);
  cfg.path = (dir / "missing.wav").string();
  CHECK(code_of([&] { load_noise(cfg); }) == ErrorCode::kIoError);
}

TEST_CASE("HTTP endpoints") {
  testing::MockVowelizer mock;
  auto gateway = std::make_shared<Gateway>(stub_gateway(remote(mock.endpoint())));
  HttpOptions options;
  options.config_json = R"({"sample_rate":22050})";
  RunningService svc(gateway, options);
  auto client = svc.client();

  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(nlohmann::json::parse(health->body)["status"] == "ok");

  const std::string body = R"({"text":"هدف","emotion":"excited"})";
  auto res = client.Post("/v1/synthesize", body, "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "audio/wav");
  CHECK(net::percent_decode(res->get_header_value("X-Vowelized-Text")) == "هَدَفَ");
  CHECK(res->get_header_value("X-Vowelized") == "true");
  CHECK(res->get_header_value("X-Backend") == "stub");
  CHECK(res->get_header_value("X-Snr-Db") == "15.000");
  const auto audio = decode(res->body);
  CHECK(audio.sample_rate == 22050);
  CHECK(audio.samples.size() == expected_samples(3));

  auto alias = client.Post("/synthesize", body, "application/json");
  REQUIRE(alias);
  CHECK(alias->body == res->body);

  auto quiet = client.Post("/v1/synthesize", R"({"text":"هدف","no_noise":true})", "application/json");
  REQUIRE(quiet);
  CHECK(quiet->get_header_value("X-Snr-Db") == "none");

  for (const std::string bad : {"{not json", R"({"text":""})", R"({"text":"a","colour":"red"})", R"([1,2])",
                                R"({"emotion":"excited"})", R"({"text":"a","emotion":"angry"})",
                                R"({"text":"a","snr_db":"loud"})"}) {
    auto r = client.Post("/v1/synthesize", bad, "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    const auto err = nlohmann::json::parse(r->body);
    CHECK(err.contains("error"));
    CHECK(err.contains("message"));
  }

  auto cfg = client.Get("/config");
  REQUIRE(cfg);
  CHECK(cfg->body == options.config_json);

  mock.stop();
  auto degraded = client.Post("/v1/synthesize", R"({"text":"كرة"})", "application/json");
  REQUIRE(degraded);
  CHECK(degraded->status == 200);
  CHECK(degraded->get_header_value("X-Vowelized") == "false");
  CHECK(net::percent_decode(degraded->get_header_value("X-Vowelized-Text")) == "كرة");

  auto metrics = client.Get("/metrics");
  REQUIRE(metrics);
  const auto m = nlohmann::json::parse(metrics->body);
  CHECK(m["ok"] == 4);
  CHECK(m["client_errors"] == 7);
  CHECK(m["vowelizer_fallbacks"] == 1);
}

TEST_CASE("HTTP: concurrent identical requests give identical bytes") {
  auto gateway = std::make_shared<Gateway>(stub_gateway());
  RunningService svc(gateway);
  const std::string body = R"({"text":"هدف رائع من اللاعب","emotion":"very_excited","snr_db":12})";
  std::vector<std::string> bodies(8);
  std::vector<int> statuses(8, 0);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      auto c = svc.client();
      if (auto r = c.Post("/v1/synthesize", body, "application/json")) {
        statuses[i] = r->status;
        bodies[i] = r->body;
      }
    });
  }
  for (auto& t : threads) t.join();
  for (int i = 0; i < 8; ++i) {
    CHECK(statuses[i] == 200);
    CHECK(bodies[i] == bodies[0]);
  }
}

TEST_CASE("HTTP: remote backend failure is a 502, static files are served") {
  testing::MockTtsBackend tts;
  tts.set_fail_status(500);
  RemoteBackendConfig rc;
  rc.endpoint = tts.endpoint();
  std::map<std::string, std::shared_ptr<const SynthBackend>> backends = stub_only();
  backends["remote"] = std::make_shared<RemoteBackend>(rc);
  auto gateway = std::make_shared<Gateway>(offline(), backends, "stub", NoiseConfig{});

  const fs::path dir = fs::temp_directory_path() / "pitchside_static";
  fs::create_directories(dir);
  std::ofstream(dir / "index.html") << "<!doctype html><title>t</title>";
  HttpOptions options;
  options.static_dir = dir.string();
  RunningService svc(gateway, options);
  auto client = svc.client();

  auto r = client.Post("/v1/synthesize", R"({"text":"هدف","backend":"remote"})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 502);
  CHECK(nlohmann::json::parse(r->body)["error"] == "BackendUnavailable");

  auto page = client.Get("/");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body.find("<title>t</title>") != std::string::npos);

  HttpOptions bad;
  bad.static_dir = (dir / "nope").string();
  CHECK(code_of([&] { HttpService(gateway, bad); }) == ErrorCode::kConfigError);
}
