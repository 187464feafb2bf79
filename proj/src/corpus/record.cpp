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

#include "pitchside/corpus/record.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pitchside/error.hpp"

namespace pitchside::corpus {
namespace {

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\r\n\v\f") != std::string_view::npos;
}

constexpr std::string_view kHeader =
    "utt_id\trecording_id\tstart_s\tend_s\ttext_raw\ttext_vowelized\temotion\talign_score\tspeaker_id";

double parse_number(const std::string& field, const std::string& where, const char* name) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kMalformedInput, where + ": bad " + name + " '" + field + "'");
  }
  return v;
}

}  // namespace

void UtteranceRecord::validate() const {
  const std::string who = "record '" + utt_id + "'";
  if (utt_id.empty() || has_space(utt_id)) throw Error(ErrorCode::kMalformedInput, who + ": bad utt_id");
  if (recording_id.empty() || has_space(recording_id)) {
    throw Error(ErrorCode::kMalformedInput, who + ": bad recording_id");
  }
  if (speaker_id.empty() || has_space(speaker_id)) throw Error(ErrorCode::kMalformedInput, who + ": bad speaker_id");
  if (utt_id.rfind(recording_id, 0) != 0) {
    throw Error(ErrorCode::kMalformedInput, who + ": utt_id must start with recording_id '" + recording_id + "'");
  }
  if (!(std::isfinite(start_s) && std::isfinite(end_s) && start_s >= 0.0 && start_s < end_s)) {
    throw Error(ErrorCode::kMalformedInput, who + ": need 0 <= start < end");
  }
  if (align_score && !(*align_score <= 0.0)) throw Error(ErrorCode::kMalformedInput, who + ": align_score must be <= 0");
  for (const std::string* t : {&text_raw, &text_vowelized}) {
    if (t->find_first_of("\t\r\n") != std::string::npos) {
      throw Error(ErrorCode::kMalformedInput, who + ": text contains a tab or newline");
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::vector<UtteranceRecord> parse_records_tsv(std::string_view tsv) {
  std::vector<UtteranceRecord> records;
  std::istringstream in{std::string(tsv)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw Error(ErrorCode::kMalformedInput, "records header must be: " + std::string(kHeader));
      header_seen = true;
      continue;
    }
    const std::string where = "records line " + std::to_string(line_no);
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (f.size() != 9) {
      throw Error(ErrorCode::kMalformedInput, where + ": expected 9 fields, got " + std::to_string(f.size()));
    }
    UtteranceRecord r;
    r.utt_id = f[0];
    r.recording_id = f[1];
    r.start_s = parse_number(f[2], where, "start_s");
    r.end_s = parse_number(f[3], where, "end_s");
    r.text_raw = f[4];
    r.text_vowelized = f[5];
    if (!f[6].empty()) {
      try {
        r.emotion = parse_emotion(f[6]);
      } catch (const Error&) {
        throw Error(ErrorCode::kUnknownLabel, where + ": '" + f[6] + "'");
      }
    }
    if (!f[7].empty()) r.align_score = parse_number(f[7], where, "align_score");
    if (!f[8].empty()) r.speaker_id = f[8];
    try {
      r.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput, where + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorCode::kMalformedInput, "records file is empty");
  return records;
}

std::vector<UtteranceRecord> read_records_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_records_tsv(ss.str());
}

std::string format_records_tsv(const std::vector<UtteranceRecord>& records) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.utt_id + '\t' + r.recording_id + '\t' + format_double(r.start_s) + '\t' + format_double(r.end_s) +
           '\t' + r.text_raw + '\t' + r.text_vowelized + '\t' +
           (r.emotion ? std::string(to_string(*r.emotion)) : "") + '\t' +
           (r.align_score ? format_double(*r.align_score) : "") + '\t' + r.speaker_id + '\n';
  }
  return out;
}

}  // namespace pitchside::corpus
