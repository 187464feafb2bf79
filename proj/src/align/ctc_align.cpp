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

#include "pitchside/align/ctc_align.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"

namespace pitchside::align {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One bit per trellis cell: did the best path enter state j at frame t.
class DecisionBits {
 public:
  DecisionBits(std::size_t frames, std::size_t states)
      : words_per_row_((states + 63) / 64), bits_(frames * words_per_row_, 0) {}

  void store_row(std::size_t t, std::span<const std::uint8_t> flags, std::size_t first, std::size_t last) {
    std::uint64_t* row = bits_.data() + t * words_per_row_;
    for (std::size_t j = first; j <= last; ++j) {
      if (flags[j] != 0) row[j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }

  bool advanced(std::size_t t, std::size_t j) const {
    return (bits_[t * words_per_row_ + j / 64] >> (j % 64)) & 1u;
  }

 private:
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

double window_min_mean(std::span<const double> values, std::size_t window) {
  const std::size_t len = std::min(window, values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) sum += values[i];
  double best = sum / static_cast<double>(len);
  for (std::size_t i = len; i < values.size(); ++i) {
    sum += values[i] - values[i - len];
    best = std::min(best, sum / static_cast<double>(len));
  }
  return best;
}

}  // namespace

std::string_view to_string(StayMode mode) {
  return mode == StayMode::kBlankOnly ? "blank_only" : "blank_or_repeat";
}

StayMode parse_stay_mode(std::string_view text) {
  if (text == "blank_only") return StayMode::kBlankOnly;
  if (text == "blank_or_repeat") return StayMode::kBlankOrRepeat;
  throw Error(ErrorCode::kConfigError, "stay mode must be blank_only or blank_or_repeat, got '" +
                                           std::string(text) + "'");
}

Alignment align(const LogPosteriorMatrix& matrix, const std::vector<std::vector<std::size_t>>& utterances,
                const AlignOptions& options) {
  if (options.score_window == 0) throw Error(ErrorCode::kInvalidArgument, "score window must be >= 1");
  std::vector<std::size_t> tokens;
  std::vector<std::size_t> utterance_end;  // exclusive end in `tokens`
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    if (utterances[u].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "utterance " + std::to_string(u) + " has no tokens");
    }
    for (std::size_t id : utterances[u]) {
      if (id >= matrix.classes || id == matrix.vocabulary.blank_index()) {
        throw Error(ErrorCode::kTokenOutOfVocab, "token id " + std::to_string(id) + " in utterance " +
                                                     std::to_string(u) + " (C=" + std::to_string(matrix.classes) + ")");
      }
      tokens.push_back(id);
    }
    utterance_end.push_back(tokens.size());
  }
  const std::size_t n = tokens.size();
  const std::size_t frames = matrix.frames;
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "nothing to align");
  if (n > frames) {
    throw Error(ErrorCode::kInfeasibleAlignment,
                std::to_string(n) + " tokens cannot fit in " + std::to_string(frames) + " frames");
  }

  const std::size_t blank = matrix.vocabulary.blank_index();
  const bool repeat = options.stay == StayMode::kBlankOrRepeat;
  const auto& kernels = simd::active();

  // emit[j] = log p(token_j, t), j = 1..n; emit[0] unused.
  std::vector<double> prev(n + 1, kNegInf), cur(n + 1, kNegInf), emit(n + 1, kNegInf);
  std::vector<std::uint8_t> flags(n + 1, 0);
  DecisionBits decisions(frames, n + 1);

  prev[0] = matrix.at(0, blank);
  prev[1] = matrix.at(0, tokens[0]);
  for (std::size_t t = 1; t < frames; ++t) {
    const auto row = matrix.row(t);
    const std::size_t last = std::min(t + 1, n);
    for (std::size_t j = 1; j <= last; ++j) emit[j] = row[tokens[j - 1]];
    cur[0] = prev[0] + row[blank];
    kernels.trellis_step(prev, emit, row[blank], repeat, 1, last, cur, flags);
    decisions.store_row(t, flags, 1, last);
    std::swap(prev, cur);
  }

  Alignment result;
  result.path_score = prev[n];
  if (!(result.path_score > kNegInf)) {
    throw Error(ErrorCode::kInfeasibleAlignment, "every alignment path has zero probability");
  }

  result.states.assign(frames, 0);
  std::size_t j = n;
  for (std::size_t t = frames - 1; t > 0; --t) {
    result.states[t] = j;
    if (j > 0 && decisions.advanced(t, j)) --j;
  }
  result.states[0] = j;  // 0 or 1 by construction

  result.symbols.resize(frames);
  result.frame_log_probs.resize(frames);
  std::vector<bool> enters(frames, false);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t s = result.states[t];
    const std::size_t before = t == 0 ? 0 : result.states[t - 1];
    std::size_t symbol = blank;
    if (s > before) {
      enters[t] = true;
      symbol = tokens[s - 1];
    } else if (s > 0 && repeat && matrix.at(t, tokens[s - 1]) > matrix.at(t, blank)) {
      symbol = tokens[s - 1];
    }
    result.symbols[t] = symbol;
    result.frame_log_probs[t] = matrix.at(t, symbol);
  }

  std::size_t token_begin = 0;
  std::size_t t_cursor = 0;
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    const std::size_t first_state = token_begin + 1;
    const std::size_t last_state = utterance_end[u];
    AlignedUtterance au;
    au.utterance_index = u;
    au.token_ids = utterances[u];
    while (!(result.states[t_cursor] == first_state && enters[t_cursor])) ++t_cursor;
    au.start_frame = t_cursor;
    std::size_t end = t_cursor;
    for (std::size_t t = t_cursor; t < frames && result.states[t] <= last_state; ++t) {
      if (result.states[t] == last_state && result.symbols[t] != blank) end = t;
    }
    au.end_frame = end;
    au.start_s = static_cast<double>(au.start_frame) * matrix.frame_duration_s;
    au.end_s = static_cast<double>(au.end_frame + 1) * matrix.frame_duration_s;
    const std::span<const double> span_lp(result.frame_log_probs.data() + au.start_frame,
                                          au.end_frame - au.start_frame + 1);
    au.score = window_min_mean(span_lp, options.score_window);
    au.frame_path.assign(result.symbols.begin() + static_cast<std::ptrdiff_t>(au.start_frame),
                         result.symbols.begin() + static_cast<std::ptrdiff_t>(au.end_frame + 1));
    result.utterances.push_back(std::move(au));
    token_begin = last_state;
    t_cursor = end + 1;
  }
  return result;
}

std::string utterance_id(std::string_view recording_id, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%04zu", index);
  return std::string(recording_id) + buf;
}

std::string emit_segments(const std::vector<AlignedUtterance>& aligned, std::string_view recording_id) {
  if (aligned.empty()) throw Error(ErrorCode::kInvalidArgument, "no aligned utterances to emit");
  std::string out;
  for (const auto& u : aligned) {
    char times[64];
    std::snprintf(times, sizeof times, " %.3f %.3f\n", u.start_s, u.end_s);
    out += utterance_id(recording_id, u.utterance_index);
    out += ' ';
    out += recording_id;
    out += times;
  }
  return out;
}

}  // namespace pitchside::align
