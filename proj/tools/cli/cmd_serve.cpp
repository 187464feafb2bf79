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

#include <pthread.h>
#include <signal.h>

#include <iostream>
#include <memory>
#include <thread>

#include "common.hpp"
#include "pitchside/error.hpp"
#include "pitchside/serve/backend.hpp"
#include "pitchside/serve/gateway.hpp"
#include "pitchside/serve/http_service.hpp"
#include "pitchside/text/vowelizer.hpp"

namespace pitchside::cli {
namespace {

struct ServeArgs {
  std::optional<int> port;
  std::string host;
  std::string backend;
  std::string static_dir;
  std::string vowelizer_endpoint;
  bool no_noise = false;
};

void run(const ServeArgs& args, const GlobalOptions& globals) {
  // Block the shutdown signals before any thread exists so that only the
  // sigwait thread below ever sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  PipelineConfig config = load_pipeline_config(globals);
  if (args.port) config.serve.port = *args.port;
  if (!args.host.empty()) config.serve.host = args.host;
  if (!args.static_dir.empty()) config.serve.static_dir = args.static_dir;
  if (!args.backend.empty()) config.serve.backend.kind = serve::parse_backend_kind(args.backend);
  if (args.no_noise) config.serve.noise.enabled = false;
  if (!args.vowelizer_endpoint.empty()) {
    config.vowelizer.mode = text::VowelizerMode::kRemote;
    config.vowelizer.endpoint = args.vowelizer_endpoint;
  }
  config.validate();

  std::map<std::string, std::shared_ptr<const serve::SynthBackend>> backends;
  backends["stub"] = std::make_shared<serve::StubBackend>(config.serve.backend.stub);
  if (!config.serve.backend.remote.endpoint.empty())
    backends["remote"] = std::make_shared<serve::RemoteBackend>(config.serve.backend.remote);
  auto gateway = std::make_shared<serve::Gateway>(std::make_shared<text::Vowelizer>(config.vowelizer),
                                                  std::move(backends),
                                                  std::string(serve::to_string(config.serve.backend.kind)),
                                                  config.serve.noise);

  serve::HttpOptions options;
  options.host = config.serve.host;
  options.port = config.serve.port;
  options.threads = config.serve.threads;
  options.static_dir = config.serve.static_dir;
  options.config_json = config_to_json(config, true);
  serve::HttpService service(gateway, options);
  const int port = service.bind();
  std::cerr << "serve: listening on http://" << options.host << ":" << port << "\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "serve: " << (sig == SIGINT ? "SIGINT" : "SIGTERM") << ", shutting down\n";
    service.stop();
  });
  service.serve();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
}

}  // namespace

void register_serve(CLI::App& app, const GlobalOptions& globals) {
  auto args = std::make_shared<ServeArgs>();
  CLI::App* cmd = app.add_subcommand("serve", "Run the synthesis HTTP gateway");
  cmd->add_option("--port", args->port, "Listen port (0 picks a free one)");
  cmd->add_option("--host", args->host, "Listen address");
  cmd->add_option("--backend", args->backend, "Default backend: stub or remote");
  cmd->add_option("--static-dir", args->static_dir, "Serve the web client from this directory at /");
  cmd->add_option("--vowelizer-endpoint", args->vowelizer_endpoint, "Vowelizer URL; implies remote mode");
  cmd->add_flag("--no-noise", args->no_noise, "Disable crowd-noise mixing");
  cmd->callback([args, &globals] { run(*args, globals); });
}

}  // namespace pitchside::cli
