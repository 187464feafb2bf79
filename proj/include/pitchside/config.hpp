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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pitchside/align/ctc_align.hpp"
#include "pitchside/corpus/emotion.hpp"
#include "pitchside/corpus/split.hpp"
#include "pitchside/serve/backend.hpp"
#include "pitchside/serve/gateway.hpp"
#include "pitchside/text/vowelizer.hpp"
#include "pitchside/vad/vad.hpp"

namespace pitchside {

/// Environment variable naming the config file when --config is absent.
inline constexpr const char* kConfigEnv = "FOOCTTS_CONFIG";

struct AlignConfig {
  align::StayMode stay = align::StayMode::kBlankOrRepeat;
  std::size_t window = 10;
  std::optional<double> min_score;  // no default threshold
};

struct ServeConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t threads = 8;
  std::string static_dir;
  serve::BackendConfig backend;
  serve::NoiseConfig noise;
};

struct PipelineConfig {
  int sample_rate = 22050;
  vad::VadConfig vad;
  AlignConfig align;
  text::VowelizerConfig vowelizer;
  corpus::SplitSpec split;
  corpus::EmotionThresholds emotion;
  ServeConfig serve;

  /// Throws kConfigError.
  void validate() const;
};

/// Keys missing from the document keep their defaults; unknown keys, wrong
/// types and invalid values throw kConfigError naming the JSON path.
PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// --config wins, then $FOOCTTS_CONFIG, then built-in defaults.
PipelineConfig resolve_config(const std::optional<std::string>& cli_path);

/// Effective config as JSON. `redact` strips credentials and query strings
/// from endpoint URLs.
std::string config_to_json(const PipelineConfig& config, bool redact = false);

}  // namespace pitchside
