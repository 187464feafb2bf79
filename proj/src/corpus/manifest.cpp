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

#include "pitchside/corpus/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pitchside/audio/wav.hpp"
#include "pitchside/error.hpp"

namespace fs = std::filesystem;

namespace pitchside::corpus {
namespace {

constexpr const char* kRequiredFiles[] = {"wav.scp", "segments", "text", "text_raw", "utt2spk", "utt2emotion"};
constexpr double kSecondsSlack = 0.0005;  // three-decimal rounding

using Lines = std::vector<std::pair<std::string, std::string>>;

void write_lines(const fs::path& path, Lines lines) {
  std::sort(lines.begin(), lines.end());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto& [key, rest] : lines) {
    out << key;
    if (!rest.empty()) out << ' ' << rest;
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Line {
  std::size_t number;
  std::string key;
  std::string rest;
};

/// Splits at the first space. Lines without a key are returned with an
/// empty key so the validator can report them.
std::vector<Line> split_lines(const std::string& content) {
  std::vector<Line> lines;
  std::istringstream in(content);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::size_t sp = raw.find(' ');
    if (sp == std::string::npos) {
      lines.push_back({n, raw, ""});
    } else {
      lines.push_back({n, raw.substr(0, sp), raw.substr(sp + 1)});
    }
  }
  return lines;
}

std::vector<std::string> fields(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

bool parse_double(const std::string& s, double& v) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

std::map<std::string, std::string> keyed(const fs::path& dir, const char* name) {
  std::map<std::string, std::string> out;
  for (Line& l : split_lines(read_file(dir / name))) {
    if (l.key.empty()) throw Error(ErrorCode::kMalformedInput, std::string(name) + " line " + std::to_string(l.number));
    if (!out.emplace(l.key, std::move(l.rest)).second) {
      throw Error(ErrorCode::kMalformedInput, std::string(name) + ": duplicate id " + l.key);
    }
  }
  return out;
}

}  // namespace

void emit_manifests(const Corpus& corpus, const fs::path& out_dir, const EmitOptions& options) {
  std::set<std::string> seen;
  std::map<std::string, std::string> used_recordings;
  bool any_score = false;
  for (const auto& r : corpus.records) {
    r.validate();
    if (!seen.insert(r.utt_id).second) throw Error(ErrorCode::kDuplicateUttId, r.utt_id);
    if (!r.emotion && !options.allow_unlabeled) {
      throw Error(ErrorCode::kUnlabeledRecord, r.utt_id + " has no emotion label");
    }
    const auto it = corpus.recordings.find(r.recording_id);
    if (it == corpus.recordings.end()) {
      throw Error(ErrorCode::kUnresolvedAudio, r.utt_id + ": no audio for recording " + r.recording_id);
    }
    if (options.require_audio && !fs::is_regular_file(it->second)) {
      throw Error(ErrorCode::kUnresolvedAudio, r.utt_id + ": " + it->second.string() + " does not exist");
    }
    const std::string path = fs::absolute(it->second).lexically_normal().string();
    if (path.find_first_of(" \t\r\n") != std::string::npos) {
      throw Error(ErrorCode::kMalformedInput, "audio path contains whitespace: " + path);
    }
    used_recordings[r.recording_id] = path;
    any_score = any_score || r.align_score.has_value();
  }

  Lines wav, segments, text, text_raw, utt2spk, utt2emotion, utt2score;
  for (const auto& [rec, path] : used_recordings) wav.emplace_back(rec, path);
  for (const auto& r : corpus.records) {
    segments.emplace_back(r.utt_id, r.recording_id + ' ' + format_seconds(r.start_s) + ' ' + format_seconds(r.end_s));
    text.emplace_back(r.utt_id, r.text_vowelized);
    text_raw.emplace_back(r.utt_id, r.text_raw);
    utt2spk.emplace_back(r.utt_id, r.speaker_id);
    utt2emotion.emplace_back(r.utt_id, std::string(to_string(r.emotion.value_or(EmotionLabel::kNeutral))));
    if (r.align_score) utt2score.emplace_back(r.utt_id, format_double(*r.align_score));
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  write_lines(out_dir / "wav.scp", std::move(wav));
  write_lines(out_dir / "segments", std::move(segments));
  write_lines(out_dir / "text", std::move(text));
  write_lines(out_dir / "text_raw", std::move(text_raw));
  write_lines(out_dir / "utt2spk", std::move(utt2spk));
  write_lines(out_dir / "utt2emotion", std::move(utt2emotion));
  if (any_score) {
    write_lines(out_dir / "utt2score", std::move(utt2score));
  } else {
    fs::remove(out_dir / "utt2score", ec);
  }
}

Corpus parse_manifests(const fs::path& dir) {
  Corpus corpus;
  for (auto& [rec, path] : keyed(dir, "wav.scp")) corpus.recordings.emplace(rec, fs::path(path));
  const auto text = keyed(dir, "text");
  const auto text_raw = keyed(dir, "text_raw");
  const auto utt2spk = keyed(dir, "utt2spk");
  const auto utt2emotion = keyed(dir, "utt2emotion");
  std::map<std::string, std::string> utt2score;
  if (fs::exists(dir / "utt2score")) utt2score = keyed(dir, "utt2score");

  auto lookup = [](const std::map<std::string, std::string>& m, const std::string& id, const char* file) {
    const auto it = m.find(id);
    if (it == m.end()) throw Error(ErrorCode::kMalformedInput, std::string(file) + " has no entry for " + id);
    return it->second;
  };

  for (const auto& [utt, rest] : keyed(dir, "segments")) {
    const auto f = fields(rest);
    UtteranceRecord r;
    r.utt_id = utt;
    if (f.size() != 3 || !parse_double(f[1], r.start_s) || !parse_double(f[2], r.end_s)) {
      throw Error(ErrorCode::kMalformedInput, "segments: bad line for " + utt);
    }
    r.recording_id = f[0];
    if (!corpus.recordings.count(r.recording_id)) {
      throw Error(ErrorCode::kMalformedInput, "segments: unknown recording " + r.recording_id);
    }
    r.text_vowelized = lookup(text, utt, "text");
    r.text_raw = lookup(text_raw, utt, "text_raw");
    r.speaker_id = lookup(utt2spk, utt, "utt2spk");
    r.emotion = parse_emotion(lookup(utt2emotion, utt, "utt2emotion"));
    if (const auto it = utt2score.find(utt); it != utt2score.end()) {
      double score = 0.0;
      if (!parse_double(it->second, score)) throw Error(ErrorCode::kMalformedInput, "utt2score: bad value for " + utt);
      r.align_score = score;
    }
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::kMissingFile: return "MissingFile";
    case IssueKind::kMalformedLine: return "MalformedLine";
    case IssueKind::kUnsorted: return "Unsorted";
    case IssueKind::kDuplicateId: return "DuplicateId";
    case IssueKind::kMissingEntry: return "MissingEntry";
    case IssueKind::kUnknownRecording: return "UnknownRecording";
    case IssueKind::kUnresolvedAudio: return "UnresolvedAudio";
    case IssueKind::kBadSegment: return "BadSegment";
    case IssueKind::kSegmentOutOfRange: return "SegmentOutOfRange";
    case IssueKind::kUnknownLabel: return "UnknownLabel";
    case IssueKind::kInconsistentSpeaker: return "InconsistentSpeaker";
  }
  return "Unknown";
}

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [kind](const ManifestIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["issues"] = nlohmann::json::array();
  for (const auto& i : issues) {
    j["issues"].push_back(
        {{"kind", to_string(i.kind)}, {"file", i.file}, {"line", i.line}, {"id", i.id}, {"message", i.message}});
  }
  return j.dump(2);
}

ValidationReport validate_manifest(const fs::path& dir) {
  ValidationReport report;
  auto add = [&](IssueKind kind, std::string file, std::size_t line, std::string id, std::string message) {
    report.issues.push_back({kind, std::move(file), line, std::move(id), std::move(message)});
  };

  // First pass: per-file structure. Each file becomes key -> (line, rest).
  std::map<std::string, std::map<std::string, std::pair<std::size_t, std::string>>> files;
  auto load = [&](const std::string& name, bool required) -> bool {
    std::string content;
    try {
      if (!fs::exists(dir / name)) {
        if (required) add(IssueKind::kMissingFile, name, 0, "", "file is missing");
        return false;
      }
      content = read_file(dir / name);
    } catch (const std::exception& e) {
      add(IssueKind::kMissingFile, name, 0, "", e.what());
      return false;
    }
    auto& entries = files[name];
    std::string previous;
    for (Line& l : split_lines(content)) {
      if (l.key.empty()) {
        add(IssueKind::kMalformedLine, name, l.number, "", "empty key");
        continue;
      }
      if (!previous.empty() && l.key < previous) {
        add(IssueKind::kUnsorted, name, l.number, l.key, "key sorts before '" + previous + "'");
      }
      previous = l.key;
      if (!entries.emplace(l.key, std::make_pair(l.number, l.rest)).second) {
        add(IssueKind::kDuplicateId, name, l.number, l.key, "repeated id");
      }
    }
    return true;
  };
  for (const char* name : kRequiredFiles) load(name, true);
  const bool has_scores = load("utt2score", false);

  // Recordings and their durations.
  std::map<std::string, double> durations;
  for (const auto& [rec, entry] : files["wav.scp"]) {
    const auto f = fields(entry.second);
    if (f.size() != 1) {
      add(IssueKind::kMalformedLine, "wav.scp", entry.first, rec, "expected 'rec_id path'");
      continue;
    }
    try {
      durations[rec] = audio::probe_wav(fs::path(f[0])).duration_seconds();
    } catch (const std::exception& e) {
      add(IssueKind::kUnresolvedAudio, "wav.scp", entry.first, rec, e.what());
    }
  }

  const auto& segments = files["segments"];
  for (const auto& [utt, entry] : segments) {
    const auto f = fields(entry.second);
    double start = 0.0, end = 0.0;
    if (f.size() != 3 || !parse_double(f[1], start) || !parse_double(f[2], end)) {
      add(IssueKind::kMalformedLine, "segments", entry.first, utt, "expected 'utt_id rec_id start end'");
      continue;
    }
    const std::string& rec = f[0];
    if (utt.rfind(rec, 0) != 0) {
      add(IssueKind::kMalformedLine, "segments", entry.first, utt, "utt_id does not start with '" + rec + "'");
    }
    if (!files["wav.scp"].count(rec)) {
      add(IssueKind::kUnknownRecording, "segments", entry.first, utt, "recording '" + rec + "' not in wav.scp");
      continue;
    }
    if (start < 0.0 || start >= end) {
      add(IssueKind::kBadSegment, "segments", entry.first, utt, "need 0 <= start < end");
      continue;
    }
    if (const auto d = durations.find(rec); d != durations.end() && end > d->second + kSecondsSlack) {
      add(IssueKind::kSegmentOutOfRange, "segments", entry.first, utt,
          "ends at " + f[2] + " s, recording is " + format_seconds(d->second) + " s");
    }
  }

  // Cross-file coverage: every utterance in every per-utterance file.
  const std::vector<std::string> per_utt{"text", "text_raw", "utt2spk", "utt2emotion"};
  for (const auto& name : per_utt) {
    for (const auto& [utt, entry] : segments) {
      if (files.count(name) && !files[name].count(utt)) {
        add(IssueKind::kMissingEntry, name, 0, utt, "no entry for utterance");
      }
    }
    for (const auto& [utt, entry] : files[name]) {
      if (!segments.count(utt)) add(IssueKind::kMissingEntry, "segments", 0, utt, "listed in " + name + " only");
    }
  }
  if (has_scores) {
    for (const auto& [utt, entry] : files["utt2score"]) {
      double score = 0.0;
      if (!segments.count(utt)) add(IssueKind::kMissingEntry, "segments", 0, utt, "listed in utt2score only");
      if (!parse_double(entry.second, score) || score > 0.0) {
        add(IssueKind::kMalformedLine, "utt2score", entry.first, utt, "score must be a number <= 0");
      }
    }
  }

  for (const auto& [utt, entry] : files["utt2spk"]) {
    if (fields(entry.second).size() != 1) {
      add(IssueKind::kInconsistentSpeaker, "utt2spk", entry.first, utt, "expected exactly one speaker id");
    }
  }
  for (const auto& [utt, entry] : files["utt2emotion"]) {
    try {
      parse_emotion(entry.second);
    } catch (const Error&) {
      add(IssueKind::kUnknownLabel, "utt2emotion", entry.first, utt, "label '" + entry.second + "'");
    }
  }
  return report;
}

}  // namespace pitchside::corpus
