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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pitchside/align/posteriors.hpp"

namespace pitchside::align {

/// What a frame may do without consuming a new token.
enum class StayMode {
  kBlankOnly,      // emit blank
  kBlankOrRepeat,  // emit blank or repeat the current token, whichever scores higher
};

std::string_view to_string(StayMode mode);
/// "blank_only" | "blank_or_repeat"; throws kConfigError otherwise.
StayMode parse_stay_mode(std::string_view text);

struct AlignOptions {
  StayMode stay = StayMode::kBlankOrRepeat;
  /// Confidence window length in frames (clipped to the utterance span).
  std::size_t score_window = 10;
};

struct AlignedUtterance {
  std::size_t utterance_index = 0;
  std::vector<std::size_t> token_ids;
  std::size_t start_frame = 0;  // frame entering the first token
  std::size_t end_frame = 0;    // last frame emitting the last token (inclusive)
  double start_s = 0.0;
  double end_s = 0.0;
  /// Minimum over windows inside the span of the mean per-frame
  /// log-posterior of the aligned symbol.
  double score = 0.0;
  /// Class emitted at each frame of [start_frame, end_frame].
  std::vector<std::size_t> frame_path;
};

struct Alignment {
  /// Best path log-score D[T-1][N].
  double path_score = 0.0;
  /// Tokens consumed after each frame (monotone, 0..N).
  std::vector<std::size_t> states;
  /// Class emitted at each frame and its log-posterior.
  std::vector<std::size_t> symbols;
  std::vector<double> frame_log_probs;
  std::vector<AlignedUtterance> utterances;
};

/// Viterbi forced alignment of the concatenated utterances over a
/// stay/advance trellis:
///   D[t][j] = max(D[t-1][j] + stay(t, j), D[t-1][j-1] + log p(token_j, t))
/// with D[0][0] = log p(blank, 0), D[0][1] = log p(token_1, 0). On equal
/// scores the advance is recorded, so backtracking puts every token onset
/// on the latest frame among the optimal paths.
/// Throws kInfeasibleAlignment (N > T or no finite path), kTokenOutOfVocab,
/// kInvalidArgument (an empty utterance or no tokens at all).
Alignment align(const LogPosteriorMatrix& matrix, const std::vector<std::vector<std::size_t>>& utterances,
                const AlignOptions& options = {});

/// Kaldi segments lines `<rec>_<index:04> <rec> <start> <end>`, seconds to
/// three decimals. Throws kInvalidArgument on empty input.
std::string emit_segments(const std::vector<AlignedUtterance>& aligned, std::string_view recording_id);

/// Kaldi utterance id `<rec>_<index:04>`.
std::string utterance_id(std::string_view recording_id, std::size_t index);

}  // namespace pitchside::align
