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

#include <atomic>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>

#include "pitchside/error.hpp"
#include "pitchside/util/lru_cache.hpp"

namespace pitchside::text {

enum class VowelizerMode { kRemote, kOfflinePassthrough };

std::string_view to_string(VowelizerMode mode);
VowelizerMode parse_vowelizer_mode(std::string_view text);

struct VowelizerConfig {
  VowelizerMode mode = VowelizerMode::kOfflinePassthrough;
  std::string endpoint;  // http://host:port/path, required in remote mode
  int timeout_ms = 5000;
  std::size_t cache_capacity = 10000;
  std::size_t max_in_flight = 4;

  /// Throws kConfigError.
  void validate() const;
};

/// Raised by vowelize(); always carries the text that was sent so the
/// caller can fall back to it.
class VowelizerError : public Error {
 public:
  VowelizerError(ErrorCode code, const std::string& message, std::string original, int status = 0)
      : Error(code, message), original_(std::move(original)), status_(status) {}

  const std::string& original_text() const { return original_; }
  /// HTTP status for kVowelizerHttpError, 0 otherwise.
  int status() const { return status_; }

 private:
  std::string original_;
  int status_;
};

struct TransportReply {
  int status = 0;
  std::string body;
};

/// One POST of UTF-8 text. Implementations throw VowelizerError with
/// kVowelizerTimeout or kVowelizerUnavailable when no reply arrives.
class VowelizerTransport {
 public:
  virtual ~VowelizerTransport() = default;
  virtual TransportReply post(const std::string& text) = 0;
};

/// text/plain POST over cpp-httplib; a fresh connection per call so the
/// transport can be shared across threads.
class HttpVowelizerTransport final : public VowelizerTransport {
 public:
  HttpVowelizerTransport(std::string endpoint, int timeout_ms);
  TransportReply post(const std::string& text) override;

 private:
  std::string origin_;
  std::string target_;
  int timeout_ms_;
};

struct VowelizerStats {
  std::size_t requests = 0;    // transport calls made
  std::size_t cache_hits = 0;
};

class Vowelizer {
 public:
  /// With no transport, remote mode builds an HttpVowelizerTransport for
  /// config.endpoint.
  explicit Vowelizer(VowelizerConfig config, std::shared_ptr<VowelizerTransport> transport = nullptr);

  /// Remote: cached by exact input, otherwise POSTed. Passthrough returns
  /// the input. A reply whose base characters differ from the input's
  /// raises kVowelizerMismatch.
  std::string vowelize(const std::string& text);

  const VowelizerConfig& config() const { return config_; }
  VowelizerStats stats() const;

 private:
  VowelizerConfig config_;
  std::shared_ptr<VowelizerTransport> transport_;
  util::LruCache<std::string, std::string> cache_;
  std::counting_semaphore<> slots_;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> hits_{0};
};

}  // namespace pitchside::text
