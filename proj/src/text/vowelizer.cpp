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

#include "pitchside/text/vowelizer.hpp"

#include <chrono>

#include "httplib.h"
#include "pitchside/net/url.hpp"
#include "pitchside/text/script.hpp"
#include "pitchside/text/utf8.hpp"

namespace pitchside::text {

std::string_view to_string(VowelizerMode mode) {
  return mode == VowelizerMode::kRemote ? "remote" : "offline_passthrough";
}

VowelizerMode parse_vowelizer_mode(std::string_view text) {
  if (text == "remote") return VowelizerMode::kRemote;
  if (text == "offline_passthrough") return VowelizerMode::kOfflinePassthrough;
  throw Error(ErrorCode::kConfigError, "unknown vowelizer mode '" + std::string(text) + "'");
}

void VowelizerConfig::validate() const {
  if (timeout_ms <= 0) throw Error(ErrorCode::kConfigError, "vowelizer timeout_ms must be > 0");
  if (max_in_flight == 0) throw Error(ErrorCode::kConfigError, "vowelizer max_in_flight must be > 0");
  if (mode == VowelizerMode::kRemote) {
    if (endpoint.empty()) throw Error(ErrorCode::kConfigError, "remote vowelizer needs an endpoint");
    net::parse_http_url(endpoint);
  }
}

HttpVowelizerTransport::HttpVowelizerTransport(std::string endpoint, int timeout_ms) : timeout_ms_(timeout_ms) {
  net::HttpUrl url = net::parse_http_url(endpoint);
  origin_ = std::move(url.origin);
  target_ = std::move(url.target);
}

TransportReply HttpVowelizerTransport::post(const std::string& text) {
  const auto timeout = std::chrono::milliseconds(timeout_ms_);
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const auto started = std::chrono::steady_clock::now();
  const httplib::Result res = client.Post(target_, text, "text/plain; charset=utf-8");
  if (res) return {res->status, res->body};

  const httplib::Error err = res.error();
  const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                         ((err == httplib::Error::Read || err == httplib::Error::Write) &&
                          std::chrono::steady_clock::now() - started >= timeout * 9 / 10);
  if (timed_out) {
    throw VowelizerError(ErrorCode::kVowelizerTimeout,
                         "no reply from " + origin_ + " within " + std::to_string(timeout_ms_) + " ms", text);
  }
  throw VowelizerError(ErrorCode::kVowelizerUnavailable, origin_ + ": " + httplib::to_string(err), text);
}

Vowelizer::Vowelizer(VowelizerConfig config, std::shared_ptr<VowelizerTransport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      cache_(config_.cache_capacity),
      slots_(static_cast<std::ptrdiff_t>(config_.max_in_flight)) {
  if (config_.mode == VowelizerMode::kRemote && !transport_) {
    config_.validate();
    transport_ = std::make_shared<HttpVowelizerTransport>(config_.endpoint, config_.timeout_ms);
    return;
  }
  if (config_.timeout_ms <= 0) throw Error(ErrorCode::kConfigError, "vowelizer timeout_ms must be > 0");
  if (config_.max_in_flight == 0) throw Error(ErrorCode::kConfigError, "vowelizer max_in_flight must be > 0");
}

std::string Vowelizer::vowelize(const std::string& text) {
  if (!is_valid_utf8(text)) throw Error(ErrorCode::kInvalidUtf8, "vowelizer input is not UTF-8");
  if (config_.mode == VowelizerMode::kOfflinePassthrough || text.empty()) return text;

  if (auto cached = cache_.get(text)) {
    ++hits_;
    return *std::move(cached);
  }

  TransportReply reply;
  slots_.acquire();
  try {
    ++requests_;
    reply = transport_->post(text);
  } catch (...) {
    slots_.release();
    throw;
  }
  slots_.release();

  if (reply.status != 200) {
    throw VowelizerError(ErrorCode::kVowelizerHttpError, "status " + std::to_string(reply.status), text,
                         reply.status);
  }
  if (!is_valid_utf8(reply.body)) {
    throw VowelizerError(ErrorCode::kVowelizerMismatch, "reply is not UTF-8", text);
  }
  if (strip_diacritics(reply.body) != strip_diacritics(text)) {
    throw VowelizerError(ErrorCode::kVowelizerMismatch, "reply changes the base characters", text);
  }
  cache_.put(text, reply.body);
  return reply.body;
}

VowelizerStats Vowelizer::stats() const { return {requests_.load(), hits_.load()}; }

}  // namespace pitchside::text
