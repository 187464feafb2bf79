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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pitchside/corpus/record.hpp"

namespace pitchside::corpus {

/// Records plus the audio file behind each recording id.
struct Corpus {
  std::vector<UtteranceRecord> records;
  std::map<std::string, std::filesystem::path> recordings;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct EmitOptions {
  /// Write unlabeled records as neutral instead of failing.
  bool allow_unlabeled = false;
  /// Check that every referenced recording file exists.
  bool require_audio = true;
};

/// Writes wav.scp, segments, text, text_raw, utt2spk, utt2emotion (and
/// utt2score when any record carries a score), each sorted by its first
/// field, space-separated, seconds with three decimals. Throws
/// kUnresolvedAudio, kUnlabeledRecord, kDuplicateUttId, kMalformedInput,
/// kIoError.
void emit_manifests(const Corpus& corpus, const std::filesystem::path& out_dir, const EmitOptions& options = {});

/// Inverse of emit_manifests. Records come back sorted by utt_id. Throws
/// kIoError or kMalformedInput.
Corpus parse_manifests(const std::filesystem::path& dir);

enum class IssueKind {
  kMissingFile,
  kMalformedLine,
  kUnsorted,
  kDuplicateId,
  kMissingEntry,
  kUnknownRecording,
  kUnresolvedAudio,
  kBadSegment,
  kSegmentOutOfRange,
  kUnknownLabel,
  kInconsistentSpeaker,
};

std::string_view to_string(IssueKind kind);

struct ManifestIssue {
  IssueKind kind;
  std::string file;
  std::size_t line = 0;  // 1-based, 0 when not tied to a line
  std::string id;
  std::string message;
};

struct ValidationReport {
  std::vector<ManifestIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(IssueKind kind) const;
  /// {"ok": bool, "issues": [{"kind", "file", "line", "id", "message"}]}
  std::string to_json() const;
};

/// Never throws for content problems; everything lands in the report.
ValidationReport validate_manifest(const std::filesystem::path& dir);

}  // namespace pitchside::corpus
