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
#include <iostream>
#include <map>
#include <memory>

#include "common.hpp"
#include "pitchside/audio/pitch.hpp"
#include "pitchside/audio/resample.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/corpus/emotion.hpp"
#include "pitchside/corpus/manifest.hpp"
#include "pitchside/corpus/record.hpp"
#include "pitchside/corpus/split.hpp"
#include "pitchside/error.hpp"

namespace pitchside::cli {
namespace {

namespace fs = std::filesystem;

struct BuildArgs {
  std::string records;
  std::string audio_dir;
  std::string out_dir;
  std::string labels;
  bool suggest = false;
  bool allow_unlabeled = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_dev;
  std::optional<std::size_t> n_test;
  std::string strategy;
};

// Labels every still-unlabeled record from the mean F0 of its clip.
void suggest_emotions(std::vector<corpus::UtteranceRecord>& records,
                      const std::map<std::string, fs::path>& recordings,
                      const corpus::EmotionThresholds& thresholds, std::size_t jobs) {
  std::map<std::string, std::vector<std::size_t>> by_recording;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!records[i].emotion) by_recording[records[i].recording_id].push_back(i);
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups(by_recording.begin(), by_recording.end());

  parallel_for(groups.size(), jobs, [&](std::size_t g) {
    const auto& [rec, indices] = groups[g];
    audio::AudioBuffer buffer = audio::read_wav(recordings.at(rec));
    if (buffer.sample_rate != audio::kCanonicalRate) buffer = audio::resample(buffer, audio::kCanonicalRate);
    for (std::size_t i : indices) {
      auto& r = records[i];
      const auto begin = static_cast<std::size_t>(std::llround(r.start_s * buffer.sample_rate));
      const auto end = std::min(buffer.size(), static_cast<std::size_t>(std::llround(r.end_s * buffer.sample_rate)));
      if (begin >= end) throw Error(ErrorCode::kUnresolvedAudio, r.utt_id + " lies outside " + rec);
      audio::AudioBuffer clip({buffer.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                               buffer.samples.begin() + static_cast<std::ptrdiff_t>(end)},
                              buffer.sample_rate);
      try {
        r.emotion = corpus::suggest_emotion(audio::estimate_f0(clip), thresholds);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoVoicedFrames && e.code() != ErrorCode::kBufferTooShort) throw;
        std::cerr << "build: no emotion suggestion for " << r.utt_id << ": " << e.what() << "\n";
      }
    }
  });
}

void run(const BuildArgs& args, const GlobalOptions& globals) {
  const PipelineConfig config = load_pipeline_config(globals);
  corpus::SplitSpec spec = config.split;
  if (args.seed) spec.seed = *args.seed;
  if (args.n_dev) spec.n_dev = *args.n_dev;
  if (args.n_test) spec.n_test = *args.n_test;
  if (!args.strategy.empty()) spec.strategy = corpus::parse_split_strategy(args.strategy);

  std::vector<corpus::UtteranceRecord> records = corpus::read_records_tsv(args.records);
  std::map<std::string, fs::path> recordings;
  for (const auto& r : records) {
    if (!recordings.count(r.recording_id))
      recordings[r.recording_id] = fs::absolute(fs::path(args.audio_dir) / (r.recording_id + ".wav")).lexically_normal();
  }

  if (!args.labels.empty()) {
    auto labels = corpus::ingest_labels(args.labels);
    for (auto& r : records) {
      auto it = labels.find(r.utt_id);
      if (it == labels.end()) continue;
      r.emotion = it->second;
      labels.erase(it);
    }
    for (const auto& [utt, label] : labels) std::cerr << "build: label for unknown utterance " << utt << "\n";
  }
  if (args.suggest) {
    for (const auto& [rec, path] : recordings)
      if (!fs::exists(path)) throw Error(ErrorCode::kUnresolvedAudio, "no audio for recording '" + rec + "'");
    suggest_emotions(records, recordings, config.emotion, globals.jobs);
  }

  const corpus::SplitResult parts = corpus::split(std::move(records), spec);
  corpus::EmitOptions emit;
  emit.allow_unlabeled = args.allow_unlabeled;
  const std::pair<const char*, const std::vector<corpus::UtteranceRecord>*> outputs[] = {
      {"train", &parts.train}, {"dev", &parts.dev}, {"test", &parts.test}};
  for (const auto& [name, part] : outputs) {
    corpus::emit_manifests(corpus::Corpus{*part, recordings}, fs::path(args.out_dir) / name, emit);
  }
  std::cerr << "build: train " << parts.train.size() << ", dev " << parts.dev.size() << ", test "
            << parts.test.size() << "\n";
}

}  // namespace

void register_build(CLI::App& app, const GlobalOptions& globals) {
  auto args = std::make_shared<BuildArgs>();
  CLI::App* cmd = app.add_subcommand("build", "Write Kaldi-style train/dev/test manifests");
  cmd->add_option("records", args->records, "Records TSV")->required();
  cmd->add_option("audio_dir", args->audio_dir, "Directory holding <recording_id>.wav")->required();
  cmd->add_option("out_dir", args->out_dir, "Output directory")->required();
  cmd->add_option("--labels", args->labels, "utt_id<TAB>emotion file");
  cmd->add_flag("--suggest-emotion", args->suggest, "Label unlabeled records from their mean F0");
  cmd->add_flag("--allow-unlabeled", args->allow_unlabeled, "Write unlabeled records as neutral");
  cmd->add_option("--seed", args->seed, "Split seed");
  cmd->add_option("--n-dev", args->n_dev, "Development set size");
  cmd->add_option("--n-test", args->n_test, "Test set size");
  cmd->add_option("--split-strategy", args->strategy, "random or chronological");
  cmd->callback([args, &globals] { run(*args, globals); });
}

}  // namespace pitchside::cli
