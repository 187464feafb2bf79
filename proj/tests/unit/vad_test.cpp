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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "pitchside/error.hpp"
#include "pitchside/vad/vad.hpp"
#include "signals.hpp"

using namespace pitchside;
using namespace pitchside::vad;
using L = SegmentLabel;

namespace {

std::map<L, std::size_t> histogram(const std::vector<L>& labels) {
  std::map<L, std::size_t> h;
  for (L l : labels) ++h[l];
  return h;
}

audio::Framing default_framing() { return audio::Framing::make(25.0, 10.0, 22050); }

std::vector<L> runs(std::initializer_list<std::pair<L, std::size_t>> spec) {
  std::vector<L> out;
  for (auto [l, n] : spec) out.insert(out.end(), n, l);
  return out;
}

double duration_for(std::size_t frames) {
  const auto f = default_framing();
  return static_cast<double>((frames - 1) * f.hop + f.length) / 22050.0;
}

void check_tiling(const std::vector<Segment>& segs, double duration) {
  REQUIRE_FALSE(segs.empty());
  CHECK(segs.front().start_s == 0.0);
  CHECK(std::fabs(segs.back().end_s - duration) <= 1e-9);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    CHECK(segs[i].start_s < segs[i].end_s);
    if (i > 0) {
      CHECK(std::fabs(segs[i].start_s - segs[i - 1].end_s) <= 1e-9);
      CHECK(segs[i].label != segs[i - 1].label);
    }
  }
}

}  // namespace

TEST_CASE("classify_frames on canonical signals") {
  const VadConfig cfg;
  const auto silent = classify_frames(audio::frame_features(testing::silence(1.0)), cfg);
  CHECK(histogram(silent)[L::kNoEnergy] == silent.size());

  const auto noise = classify_frames(audio::frame_features(testing::white_noise(1.0, 8)), cfg);
  CHECK(histogram(noise)[L::kNoise] * 2 > noise.size());

  const auto speech = classify_frames(audio::frame_features(testing::speech_proxy(1.0)), cfg);
  CHECK(histogram(speech)[L::kSpeech] * 2 > speech.size());

  const auto tone = classify_frames(audio::frame_features(testing::sine(440.0, 1.0)), cfg);
  CHECK(histogram(tone)[L::kMusic] * 2 > tone.size());

  CHECK_THROWS_AS(classify_frames(audio::FeatureTrack{}, cfg), Error);
}

TEST_CASE("classification survives a +6 dB gain except near the energy floor") {
  const VadConfig cfg;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto signal = testing::concat({testing::speech_proxy(0.7, 120.0 + 20 * trial, 22050, 0.02 + 0.05 * trial),
                                   testing::white_noise(0.5, rng(), 22050, 0.003 + 0.01 * trial),
                                   testing::silence(0.3)});
    auto louder = signal;
    for (float& s : louder.samples) s *= 2.0f;  // exact in binary floating point
    const auto fa = audio::frame_features(signal);
    const auto a = classify_frames(fa, cfg);
    const auto b = classify_frames(audio::frame_features(louder), cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) {
        CHECK(std::fabs(fa.energy_db[i] - cfg.energy_floor_db) <= 6.1);
      }
    }
  }
}

TEST_CASE("smooth_and_segment examples") {
  const VadConfig cfg;
  const auto framing = default_framing();

  const auto uniform = smooth_and_segment(std::vector<L>(80, L::kMusic), framing, duration_for(80), cfg);
  REQUIRE(uniform.size() == 1);
  CHECK(uniform[0].label == L::kMusic);
  check_tiling(uniform, duration_for(80));

  const auto blip = smooth_and_segment(runs({{L::kSpeech, 50}, {L::kNoise, 2}, {L::kSpeech, 50}}), framing,
                                       duration_for(102), cfg);
  REQUIRE(blip.size() == 1);
  CHECK(blip[0].label == L::kSpeech);

  // Hand trace: the majority filter keeps the edge at frame 50, whose
  // boundary is 50 * 10 ms shifted by half of (25 - 10) ms.
  const auto two = smooth_and_segment(runs({{L::kSpeech, 50}, {L::kNoise, 50}}), framing, duration_for(100), cfg);
  REQUIRE(two.size() == 2);
  CHECK(two[0].label == L::kSpeech);
  CHECK(two[1].label == L::kNoise);
  CHECK(std::fabs(two[0].end_s - 0.5) <= 0.01);
  check_tiling(two, duration_for(100));
}

TEST_CASE("short runs fold into the longer neighbour") {
  VadConfig cfg;
  cfg.smoothing_frames = 1;
  const auto framing = default_framing();
  // 20 frames of music (~0.2 s) between 40 speech and 100 noise.
  const auto segs = smooth_and_segment(runs({{L::kSpeech, 40}, {L::kMusic, 20}, {L::kNoise, 100}}), framing,
                                       duration_for(160), cfg);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].label == L::kSpeech);
  CHECK(segs[1].label == L::kNoise);
  const double edge = 40 * framing.hop_seconds() + (framing.length_seconds() - framing.hop_seconds()) / 2;
  CHECK(segs[0].end_s == doctest::Approx(edge));
}

TEST_CASE("segments always tile the timeline (random label sequences)") {
  std::mt19937_64 rng(77);
  const auto framing = default_framing();
  for (int trial = 0; trial < 200; ++trial) {
    VadConfig cfg;
    cfg.smoothing_frames = 1 + rng() % 15;
    cfg.min_segment_s = 0.05 + 0.01 * static_cast<double>(rng() % 50);
    std::vector<L> labels(1 + rng() % 400);
    L current = L::kSpeech;
    for (auto& l : labels) {
      if (rng() % 8 == 0) current = static_cast<L>(rng() % 4);
      l = current;
    }
    const double duration = duration_for(labels.size());
    const auto segs = smooth_and_segment(labels, framing, duration, cfg);
    check_tiling(segs, duration);
    if (segs.size() > 1) {
      for (const auto& s : segs) CHECK(s.duration() >= cfg.min_segment_s - 1e-12);
    }
    const auto speech = filter_speech(segs);
    double total = 0.0;
    for (const auto& s : speech) total += s.duration();
    CHECK(total <= duration + 1e-9);
  }
}

TEST_CASE("filter_speech keeps only speech in order") {
  const std::vector<Segment> all{{0.0, 1.0, L::kNoEnergy}, {1.0, 2.0, L::kSpeech}, {2.0, 3.0, L::kMusic},
                                 {3.0, 4.0, L::kNoise},    {4.0, 5.0, L::kSpeech}};
  const auto kept = filter_speech(all);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == all[1]);
  CHECK(kept[1] == all[4]);

  CHECK(filter_speech({{0.0, 1.0, L::kNoise}}).empty());
  const std::vector<Segment> speech_only{{0.0, 1.0, L::kSpeech}, {1.0, 1.5, L::kSpeech}};
  CHECK(filter_speech(speech_only) == speech_only);
}

TEST_CASE("cut_audio clip lengths and exact concatenation") {
  const auto buf = testing::white_noise(2.5, 3);
  const auto whole = cut_audio(buf, {{0.0, buf.duration_seconds(), L::kSpeech}});
  REQUIRE(whole.size() == 1);
  CHECK(whole[0] == buf);

  CHECK(cut_audio(buf, {{0.0, 1.0, L::kSpeech}})[0].size() == 22050);

  const auto pair = cut_audio(buf, {{0.3337, 1.1111, L::kSpeech}, {1.1111, 2.0003, L::kNoise}});
  std::vector<float> joined = pair[0].samples;
  joined.insert(joined.end(), pair[1].samples.begin(), pair[1].samples.end());
  const auto span = cut_audio(buf, {{0.3337, 2.0003, L::kSpeech}});
  CHECK(joined == span[0].samples);

  CHECK_THROWS_AS(cut_audio(buf, {{2.0, 3.0, L::kSpeech}}), Error);
  CHECK_THROWS_AS(cut_audio(buf, {{1.0, 1.0, L::kSpeech}}), Error);
}

TEST_CASE("three-part fixture segments at the true boundaries") {
  const auto fixture = testing::concat({testing::silence(1.0), testing::speech_proxy(1.0), testing::white_noise(1.0, 7)});
  const auto segs = segment_recording(fixture, VadConfig{});
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].label == L::kNoEnergy);
  CHECK(segs[1].label == L::kSpeech);
  CHECK(segs[2].label == L::kNoise);
  CHECK(std::fabs(segs[0].end_s - 1.0) <= 0.05);
  CHECK(std::fabs(segs[1].end_s - 2.0) <= 0.05);
}

TEST_CASE("a substituted classifier drives segmentation") {
  struct AllMusic final : FrameClassifier {
    std::vector<L> classify(const audio::FeatureTrack& f) const override { return std::vector<L>(f.size(), L::kMusic); }
  };
  AllMusic music;
  const auto segs = segment_recording(testing::speech_proxy(1.0), VadConfig{}, &music);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].label == L::kMusic);
}

TEST_CASE("segment text format") {
  const std::vector<Segment> segs{{0.0, 1.25, L::kNoEnergy}, {1.25, 2.0, L::kSpeech}};
  const std::string text = format_segments(segs);
  CHECK(text == "0.000\t1.250\tnoEnergy\n1.250\t2.000\tspeech\n");
  CHECK(parse_segments(text) == segs);
  CHECK_THROWS_AS(parse_segments("0.0\t1.0\tshouting\n"), Error);
  CHECK_THROWS_AS(parse_segments("1.0 2.0 speech\n"), Error);
  CHECK_THROWS_AS(parse_segments("2.0\t1.0\tspeech\n"), Error);
}
