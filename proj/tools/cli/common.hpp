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

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pitchside/config.hpp"

namespace pitchside::cli {

struct GlobalOptions {
  std::string config_path;
  std::size_t jobs = 1;
};

/// Config after --config / FOOCTTS_CONFIG resolution.
PipelineConfig load_pipeline_config(const GlobalOptions& globals);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
/// Non-empty lines with trailing CR and surrounding blanks removed.
std::vector<std::string> read_list(const std::filesystem::path& path);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Every item runs;
/// afterwards the exception of the lowest failing index is rethrown, so the
/// outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void register_vad(CLI::App& app, const GlobalOptions& globals);
void register_align(CLI::App& app, const GlobalOptions& globals);
void register_text(CLI::App& app, const GlobalOptions& globals);
void register_build(CLI::App& app, const GlobalOptions& globals);
void register_validate(CLI::App& app, const GlobalOptions& globals);
void register_serve(CLI::App& app, const GlobalOptions& globals);

}  // namespace pitchside::cli
