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

#include "pitchside/vad/vad.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "pitchside/error.hpp"

namespace pitchside::vad {
namespace {

constexpr std::array<SegmentLabel, 4> kAllLabels{SegmentLabel::kSpeech, SegmentLabel::kNoise,
                                                 SegmentLabel::kMusic, SegmentLabel::kNoEnergy};

// Standard deviation of v over [i - half, i + half], clipped to the track.
std::vector<double> local_std(const std::vector<double>& v, std::size_t half) {
  const std::size_t n = v.size();
  std::vector<double> sum(n + 1, 0.0);
  std::vector<double> sum_sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + v[i];
    sum_sq[i + 1] = sum_sq[i] + v[i] * v[i];
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    const auto count = static_cast<double>(hi - lo);
    const double mean = (sum[hi] - sum[lo]) / count;
    const double var = (sum_sq[hi] - sum_sq[lo]) / count - mean * mean;
    out[i] = std::sqrt(std::max(var, 0.0));
  }
  return out;
}

struct Run {
  SegmentLabel label;
  double start;
  double end;
  double duration() const { return end - start; }
};

void coalesce(std::vector<Run>& runs) {
  std::vector<Run> merged;
  for (const Run& r : runs) {
    if (!merged.empty() && merged.back().label == r.label) {
      merged.back().end = r.end;
    } else {
      merged.push_back(r);
    }
  }
  runs = std::move(merged);
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string_view to_string(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::kSpeech: return "speech";
    case SegmentLabel::kNoise: return "noise";
    case SegmentLabel::kMusic: return "music";
    case SegmentLabel::kNoEnergy: return "noEnergy";
  }
  return "noise";
}

SegmentLabel parse_label(std::string_view text) {
  for (SegmentLabel l : kAllLabels) {
    if (to_string(l) == text) return l;
  }
  throw Error(ErrorCode::kMalformedInput, "unknown segment label '" + std::string(text) + "'");
}

void VadConfig::validate() const {
  const std::array<double, 8> thresholds{energy_floor_db,         flatness_music_max,
                                         music_flatness_std_max,  music_energy_std_max_db,
                                         zcr_speech_min_hz,       zcr_speech_max_hz,
                                         flatness_speech_max,     min_segment_s};
  for (double t : thresholds) {
    if (!std::isfinite(t)) throw Error(ErrorCode::kConfigError, "vad thresholds must be finite");
  }
  if (!(min_segment_s > 0.0)) throw Error(ErrorCode::kConfigError, "vad.min_segment_s must be > 0");
  if (smoothing_frames == 0) throw Error(ErrorCode::kConfigError, "vad.smoothing_frames must be >= 1");
}

HeuristicClassifier::HeuristicClassifier(VadConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::vector<SegmentLabel> HeuristicClassifier::classify(const audio::FeatureTrack& features) const {
  const std::size_t n = features.size();
  if (n == 0) throw Error(ErrorCode::kEmptyTrack, "feature track has no frames");

  const std::size_t half = config_.music_window_frames / 2;
  const auto flatness_std = local_std(features.spectral_flatness, half);
  const auto energy_std = local_std(features.energy_db, half);
  const double frame_s = features.framing.length_seconds();

  std::vector<SegmentLabel> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double flatness = features.spectral_flatness[i];
    const double zcr_hz = features.zcr[i] / frame_s;
    if (features.energy_db[i] < config_.energy_floor_db) {
      labels[i] = SegmentLabel::kNoEnergy;
    } else if (flatness < config_.flatness_music_max &&
               flatness_std[i] < config_.music_flatness_std_max &&
               energy_std[i] < config_.music_energy_std_max_db) {
      labels[i] = SegmentLabel::kMusic;
    } else if (zcr_hz >= config_.zcr_speech_min_hz && zcr_hz <= config_.zcr_speech_max_hz &&
               flatness <= config_.flatness_speech_max) {
      labels[i] = SegmentLabel::kSpeech;
    } else {
      labels[i] = SegmentLabel::kNoise;
    }
  }
  return labels;
}

std::vector<SegmentLabel> classify_frames(const audio::FeatureTrack& features, const VadConfig& config) {
  return HeuristicClassifier(config).classify(features);
}

std::vector<Segment> smooth_and_segment(const std::vector<SegmentLabel>& labels,
                                        const audio::Framing& framing, double duration_s,
                                        const VadConfig& config) {
  config.validate();
  const std::size_t n = labels.size();
  if (n == 0) return {};

  // Majority vote over an odd window; ties keep the centre label, then the
  // lowest enum value.
  const std::size_t half = config.smoothing_frames / 2;
  std::vector<SegmentLabel> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<std::size_t, 4> votes{};
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    for (std::size_t j = lo; j < hi; ++j) ++votes[static_cast<std::size_t>(labels[j])];
    const std::size_t centre = static_cast<std::size_t>(labels[i]);
    std::size_t best = centre;
    for (std::size_t l = 0; l < votes.size(); ++l) {
      if (votes[l] > votes[best]) best = l;
    }
    smooth[i] = static_cast<SegmentLabel>(best);
  }

  // Boundary between frames i-1 and i sits midway between their centres.
  const double hop_s = framing.hop_seconds();
  const double offset = (framing.length_seconds() - hop_s) / 2.0;
  auto boundary = [&](std::size_t i) {
    return std::clamp(static_cast<double>(i) * hop_s + offset, 0.0, duration_s);
  };

  std::vector<Run> runs;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || smooth[i] != smooth[begin]) {
      runs.push_back({smooth[begin], begin == 0 ? 0.0 : boundary(begin), i == n ? duration_s : boundary(i)});
      begin = i;
    }
  }
  std::erase_if(runs, [](const Run& r) { return !(r.end > r.start); });
  if (runs.empty()) return {};
  runs.front().start = 0.0;
  runs.back().end = duration_s;
  coalesce(runs);

  while (runs.size() > 1) {
    std::size_t shortest = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].duration() < runs[shortest].duration()) shortest = i;
    }
    if (runs[shortest].duration() >= config.min_segment_s) break;
    std::size_t target;
    if (shortest == 0) {
      target = 1;
    } else if (shortest + 1 == runs.size()) {
      target = shortest - 1;
    } else {
      target = runs[shortest + 1].duration() > runs[shortest - 1].duration() ? shortest + 1 : shortest - 1;
    }
    if (target < shortest) {
      runs[target].end = runs[shortest].end;
    } else {
      runs[target].start = runs[shortest].start;
    }
    runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(shortest));
    coalesce(runs);
  }

  std::vector<Segment> segments;
  segments.reserve(runs.size());
  for (const Run& r : runs) segments.push_back({r.start, r.end, r.label});
  return segments;
}

std::vector<Segment> filter_speech(const std::vector<Segment>& segments) {
  std::vector<Segment> out;
  std::copy_if(segments.begin(), segments.end(), std::back_inserter(out),
               [](const Segment& s) { return s.label == SegmentLabel::kSpeech; });
  return out;
}

std::vector<audio::AudioBuffer> cut_audio(const audio::AudioBuffer& buffer,
                                          const std::vector<Segment>& segments) {
  const double rate = buffer.sample_rate;
  const double tolerance = 0.5 / rate + 1e-9;
  std::vector<audio::AudioBuffer> clips;
  clips.reserve(segments.size());
  for (const Segment& s : segments) {
    if (!(s.start_s >= 0.0) || !(s.end_s > s.start_s) ||
        s.end_s > buffer.duration_seconds() + tolerance) {
      throw Error(ErrorCode::kSegmentOutOfRange,
                  "[" + fixed3(s.start_s) + ", " + fixed3(s.end_s) + "] outside recording of " +
                      fixed3(buffer.duration_seconds()) + " s");
    }
    const auto first = std::min<std::size_t>(buffer.size(), static_cast<std::size_t>(std::llround(s.start_s * rate)));
    const auto last = std::min<std::size_t>(buffer.size(), static_cast<std::size_t>(std::llround(s.end_s * rate)));
    clips.emplace_back(std::vector<float>(buffer.samples.begin() + static_cast<std::ptrdiff_t>(first),
                                          buffer.samples.begin() + static_cast<std::ptrdiff_t>(last)),
                       buffer.sample_rate);
  }
  return clips;
}

std::vector<Segment> segment_recording(const audio::AudioBuffer& buffer, const VadConfig& config,
                                       const FrameClassifier* classifier) {
  const auto features = audio::frame_features(buffer);
  std::vector<SegmentLabel> labels;
  if (classifier != nullptr) {
    labels = classifier->classify(features);
  } else {
    labels = classify_frames(features, config);
  }
  return smooth_and_segment(labels, features.framing, buffer.duration_seconds(), config);
}

std::string format_segments(const std::vector<Segment>& segments) {
  std::string out;
  for (const Segment& s : segments) {
    out += fixed3(s.start_s);
    out += '\t';
    out += fixed3(s.end_s);
    out += '\t';
    out += to_string(s.label);
    out += '\n';
  }
  return out;
}

std::vector<Segment> parse_segments(std::string_view text) {
  std::vector<Segment> segments;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::kMalformedInput, "segments line " + std::to_string(line_no) + ": " + why);
    };
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw fail("expected three tab-separated fields");
    Segment s;
    const auto a = line.substr(0, t1);
    const auto b = line.substr(t1 + 1, t2 - t1 - 1);
    if (std::from_chars(a.data(), a.data() + a.size(), s.start_s).ec != std::errc{} ||
        std::from_chars(b.data(), b.data() + b.size(), s.end_s).ec != std::errc{}) {
      throw fail("bad time value");
    }
    if (!(s.start_s >= 0.0) || !(s.end_s > s.start_s)) throw fail("need 0 <= start < end");
    try {
      s.label = parse_label(line.substr(t2 + 1));
    } catch (const Error&) {
      throw fail("unknown label '" + std::string(line.substr(t2 + 1)) + "'");
    }
    segments.push_back(s);
  }
  return segments;
}

}  // namespace pitchside::vad
