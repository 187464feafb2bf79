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
#include <memory>
#include <string>

#include "pitchside/serve/gateway.hpp"

namespace httplib {
class Server;
}

namespace pitchside::serve {

struct HttpOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::size_t threads = 8;
  /// Served at "/" when set (the browser front-end).
  std::string static_dir;
  /// Body of GET /config.
  std::string config_json = "{}";
};

/// JSON-in / WAV-out front door for a Gateway.
///   POST /v1/synthesize, POST /synthesize
///   GET  /health, /config, /metrics
class HttpService {
 public:
  HttpService(std::shared_ptr<const Gateway> gateway, HttpOptions options);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds and returns the port. Throws kConfigError if binding fails.
  int bind();
  /// Blocks until stop().
  void serve();
  void stop();
  int port() const { return port_; }

 private:
  struct Metrics;
  void install_routes();

  std::shared_ptr<const Gateway> gateway_;
  HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<Metrics> metrics_;
  int port_ = 0;
};

}  // namespace pitchside::serve
