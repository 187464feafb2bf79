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

#include <cstdio>
#include <iostream>
#include <memory>
#include <set>

#include "common.hpp"
#include "pitchside/audio/resample.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/error.hpp"
#include "pitchside/vad/vad.hpp"

namespace pitchside::cli {
namespace {

namespace fs = std::filesystem;

struct VadArgs {
  std::string input;
  std::string output;
  std::string batch;
  std::string out_dir;
  std::string clips_dir;
  bool speech_only = false;
};

void run_one(const fs::path& in, const fs::path& out, const std::string& clips_dir, bool speech_only,
             const vad::VadConfig& config) {
  audio::AudioBuffer buffer = audio::read_wav(in);
  if (buffer.sample_rate != audio::kCanonicalRate) buffer = audio::resample(buffer, audio::kCanonicalRate);
  std::vector<vad::Segment> segments = vad::segment_recording(buffer, config);
  if (speech_only) segments = vad::filter_speech(segments);
  write_file(out, vad::format_segments(segments));
  if (clips_dir.empty()) return;
  const auto clips = vad::cut_audio(buffer, segments);
  const std::string stem = in.stem().string();
  for (std::size_t i = 0; i < clips.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "_%04zu.wav", i);
    fs::create_directories(clips_dir);
    audio::write_wav(clips[i], fs::path(clips_dir) / (stem + name));
  }
}

void run(const VadArgs& args, const GlobalOptions& globals) {
  const PipelineConfig config = load_pipeline_config(globals);
  if (args.batch.empty()) {
    if (args.input.empty() || args.output.empty())
      throw Error(ErrorCode::kInvalidArgument, "vad needs IN.wav OUT.segments or --batch LIST --out-dir DIR");
    run_one(args.input, args.output, args.clips_dir, args.speech_only, config.vad);
    return;
  }
  if (args.out_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "--batch requires --out-dir");
  if (!args.input.empty()) throw Error(ErrorCode::kInvalidArgument, "--batch does not take positional files");
  const auto inputs = read_list(args.batch);
  std::set<std::string> stems;
  for (const auto& in : inputs) {
    if (!stems.insert(fs::path(in).stem().string()).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate recording name '" + fs::path(in).stem().string() + "'");
  }
  parallel_for(inputs.size(), globals.jobs, [&](std::size_t i) {
    const fs::path in = inputs[i];
    run_one(in, fs::path(args.out_dir) / (in.stem().string() + ".segments"), args.clips_dir, args.speech_only,
            config.vad);
  });
  std::cerr << "vad: " << inputs.size() << " recordings\n";
}

}  // namespace

void register_vad(CLI::App& app, const GlobalOptions& globals) {
  auto args = std::make_shared<VadArgs>();
  CLI::App* cmd = app.add_subcommand("vad", "Label speech, music, noise and noEnergy segments");
  cmd->add_option("input", args->input, "Input WAV");
  cmd->add_option("output", args->output, "Output segments file");
  cmd->add_option("--batch", args->batch, "File listing one WAV path per line");
  cmd->add_option("--out-dir", args->out_dir, "Directory for <name>.segments in batch mode");
  cmd->add_option("--clips-dir", args->clips_dir, "Write one WAV per emitted segment here");
  cmd->add_flag("--speech-only", args->speech_only, "Keep only speech segments");
  cmd->callback([args, &globals] { run(*args, globals); });
}

}  // namespace pitchside::cli
