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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "pitchside/align/vocabulary.hpp"

namespace pitchside::align {

/// Entries above this are rejected as not being log-probabilities.
inline constexpr double kLogProbSlack = 1e-6;

/// T x C per-frame log-posteriors, frame-major.
struct LogPosteriorMatrix {
  std::size_t frames = 0;
  std::size_t classes = 0;
  double frame_duration_s = 0.0;
  std::vector<double> values;
  Vocabulary vocabulary;

  double at(std::size_t t, std::size_t c) const { return values[t * classes + c]; }
  double& at(std::size_t t, std::size_t c) { return values[t * classes + c]; }
  std::span<const double> row(std::size_t t) const { return {values.data() + t * classes, classes}; }

  /// Throws kDimensionMismatch (shape, vocabulary size), kNotLogProb
  /// (entry > 1e-6 or NaN) or kInvalidArgument (frame duration).
  void validate() const;
};

/// CTCP binary layout: "CTCP", u32 T, u32 C, u32 frame duration in
/// microseconds, then T*C float32 log-probs, all little-endian.
LogPosteriorMatrix decode_ctcp(std::span<const std::uint8_t> bytes, Vocabulary vocabulary);
std::vector<std::uint8_t> encode_ctcp(const LogPosteriorMatrix& matrix);

/// The vocabulary sidecar defaults to the same path with extension
/// ".vocab.json" (e.g. match01.ctcp -> match01.vocab.json).
std::filesystem::path default_vocab_path(const std::filesystem::path& ctcp_path);

/// Throws kIoError, kBadMagic, kDimensionMismatch, kNotLogProb.
LogPosteriorMatrix load_posteriors(const std::filesystem::path& path,
                                   const std::optional<std::filesystem::path>& vocab_path = std::nullopt);
void save_posteriors(const LogPosteriorMatrix& matrix, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& vocab_path = std::nullopt);

}  // namespace pitchside::align
