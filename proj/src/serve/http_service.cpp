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

#include "pitchside/serve/http_service.hpp"

#include <chrono>
#include <cstdio>

#include "httplib.h"
#include "json.hpp"
#include "pitchside/error.hpp"
#include "pitchside/net/url.hpp"

namespace pitchside::serve {
namespace {

using nlohmann::json;

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", code}, {"message", message}}.dump(), "application/json");
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kBadBackendAudio:
      return 502;
    default:
      return is_input_error(code) ? 400 : 500;
  }
}

SynthesisRequest parse_request(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidRequest, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidRequest, "request must be a JSON object");
  SynthesisRequest req;
  for (const auto& [key, value] : j.items()) {
    if (key == "text") {
      if (!value.is_string()) throw Error(ErrorCode::kInvalidRequest, "text must be a string");
      req.text = value.get<std::string>();
    } else if (key == "emotion") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw Error(ErrorCode::kInvalidRequest, "emotion must be a string or null");
      try {
        req.emotion = corpus::parse_emotion(value.get<std::string>());
      } catch (const Error&) {
        throw Error(ErrorCode::kInvalidRequest, "unknown emotion '" + value.get<std::string>() + "'");
      }
    } else if (key == "snr_db") {
      if (value.is_null()) continue;
      if (!value.is_number()) throw Error(ErrorCode::kInvalidRequest, "snr_db must be a number");
      req.snr_db = value.get<double>();
    } else if (key == "no_noise") {
      if (!value.is_boolean()) throw Error(ErrorCode::kInvalidRequest, "no_noise must be a boolean");
      req.no_noise = value.get<bool>();
    } else if (key == "backend") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw Error(ErrorCode::kInvalidRequest, "backend must be a string");
      req.backend = value.get<std::string>();
    } else {
      throw Error(ErrorCode::kInvalidRequest, "unknown field '" + key + "'");
    }
  }
  if (!j.contains("text")) throw Error(ErrorCode::kInvalidRequest, "missing field 'text'");
  return req;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

struct HttpService::Metrics {
  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> ok{0};
  std::atomic<std::uint64_t> client_errors{0};
  std::atomic<std::uint64_t> upstream_errors{0};
  std::atomic<std::uint64_t> server_errors{0};
  std::atomic<std::uint64_t> vowelizer_fallbacks{0};
  std::atomic<std::uint64_t> latency_us_total{0};
};

HttpService::HttpService(std::shared_ptr<const Gateway> gateway, HttpOptions options)
    : gateway_(std::move(gateway)),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()),
      metrics_(std::make_unique<Metrics>()) {
  if (!gateway_) throw Error(ErrorCode::kConfigError, "http service needs a gateway");
  if (options_.threads == 0) throw Error(ErrorCode::kConfigError, "threads must be > 0");
  const std::size_t threads = options_.threads;
  server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  server_->set_payload_max_length(1 << 20);
  install_routes();
}

HttpService::~HttpService() { stop(); }

void HttpService::install_routes() {
  auto synthesize = [this](const httplib::Request& req, httplib::Response& res) {
    const auto started = std::chrono::steady_clock::now();
    ++metrics_->requests;
    try {
      const SynthesisResponse out = gateway_->synthesize(parse_request(req.body));
      res.set_content(std::string(out.wav.begin(), out.wav.end()), "audio/wav");
      res.set_header("X-Vowelized-Text", net::percent_encode(out.vowelized_text));
      res.set_header("X-Vowelized", out.vowelized ? "true" : "false");
      res.set_header("X-Vowelizer-Status", out.vowelizer_status);
      res.set_header("X-Backend", out.backend);
      res.set_header("X-Snr-Db", out.snr_db ? fixed3(*out.snr_db) : "none");
      res.set_header("X-Duration-S", fixed3(out.duration_s));
      res.set_header("Cache-Control", "no-store");
      ++metrics_->ok;
      if (!out.vowelized && out.vowelizer_status != "passthrough") ++metrics_->vowelizer_fallbacks;
    } catch (const Error& e) {
      const int status = status_for(e.code());
      (status == 400 ? metrics_->client_errors : status == 502 ? metrics_->upstream_errors : metrics_->server_errors)++;
      send_error(res, status, to_string(e.code()), e.what());
    } catch (const std::exception& e) {
      ++metrics_->server_errors;
      send_error(res, 500, "InternalError", e.what());
    }
    metrics_->latency_us_total += static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - started).count());
  };
  server_->Post("/v1/synthesize", synthesize);
  server_->Post("/synthesize", synthesize);

  server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  server_->Get("/config", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(options_.config_json, "application/json");
  });
  server_->Get("/metrics", [this](const httplib::Request&, httplib::Response& res) {
    const auto v = gateway_->vowelizer().stats();
    const json j{{"requests", metrics_->requests.load()},
                 {"ok", metrics_->ok.load()},
                 {"client_errors", metrics_->client_errors.load()},
                 {"upstream_errors", metrics_->upstream_errors.load()},
                 {"server_errors", metrics_->server_errors.load()},
                 {"vowelizer_fallbacks", metrics_->vowelizer_fallbacks.load()},
                 {"vowelizer_requests", v.requests},
                 {"vowelizer_cache_hits", v.cache_hits},
                 {"latency_us_total", metrics_->latency_us_total.load()}};
    res.set_content(j.dump(), "application/json");
  });

  if (!options_.static_dir.empty() && !server_->set_mount_point("/", options_.static_dir)) {
    throw Error(ErrorCode::kConfigError, "static_dir '" + options_.static_dir + "' is not a directory");
  }
}

int HttpService::bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
    if (port_ <= 0) throw Error(ErrorCode::kConfigError, "cannot bind " + options_.host);
  } else {
    if (!server_->bind_to_port(options_.host, options_.port)) {
      throw Error(ErrorCode::kConfigError, "cannot bind " + options_.host + ":" + std::to_string(options_.port));
    }
    port_ = options_.port;
  }
  return port_;
}

void HttpService::serve() { server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

}  // namespace pitchside::serve
