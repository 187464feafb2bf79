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

// Exhaustive reference for the stay/advance alignment trellis. Enumerates
// every monotone state path, so it is only usable for tiny instances
// (T <= ~16). Shares no code with the production aligner.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "pitchside/align/posteriors.hpp"

namespace pitchside::testing {

struct OraclePath {
  double score = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> states;
  std::vector<std::size_t> symbols;
};

struct OracleSpan {
  std::size_t start_frame;
  std::size_t end_frame;
};

inline double oracle_term(const align::LogPosteriorMatrix& m, std::size_t t, std::size_t prev_state,
                          std::size_t state, const std::vector<std::size_t>& tokens, bool repeat,
                          std::size_t* symbol_out) {
  const std::size_t blank = m.vocabulary.blank_index();
  if (state == prev_state + 1) {
    *symbol_out = tokens[state - 1];
    return m.at(t, tokens[state - 1]);
  }
  if (state == 0 || !repeat) {
    *symbol_out = blank;
    return m.at(t, blank);
  }
  const double b = m.at(t, blank);
  const double r = m.at(t, tokens[state - 1]);
  *symbol_out = r > b ? tokens[state - 1] : blank;
  return std::max(b, r);
}

// True if `a` is preferred over `b` under the tie rule: scanning from the
// last frame backwards, the first frame where they differ has `a` entering
// a token there (the later onset).
inline bool prefers_later_onset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t t = a.size(); t-- > 0;) {
    const std::size_t da = a[t] - (t == 0 ? 0 : a[t - 1]);
    const std::size_t db = b[t] - (t == 0 ? 0 : b[t - 1]);
    if (da != db) return da > db;
  }
  return false;
}

inline OraclePath brute_force_align(const align::LogPosteriorMatrix& m, const std::vector<std::size_t>& tokens,
                                    bool repeat) {
  const std::size_t T = m.frames;
  const std::size_t N = tokens.size();
  OraclePath best;
  std::vector<std::size_t> states(T), symbols(T);
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t t, std::size_t prev, double acc) {
    if (t == T) {
      if (prev != N) return;
      if (best.states.empty() || acc > best.score ||
          (acc == best.score && prefers_later_onset(states, best.states))) {
        best.score = acc;
        best.states = states;
        best.symbols = symbols;
      }
      return;
    }
    for (std::size_t step = 0; step <= 1; ++step) {
      const std::size_t s = prev + step;
      if (s > N) continue;
      if (N - s > T - 1 - t) continue;  // cannot finish
      std::size_t sym;
      const double term = oracle_term(m, t, prev, s, tokens, repeat, &sym);
      states[t] = s;
      symbols[t] = sym;
      walk(t + 1, s, t == 0 ? term : acc + term);
    }
  };
  walk(0, 0, 0.0);
  return best;
}

/// Spans per utterance from a state path, using the documented rules:
/// start = frame entering the first token, end = last frame in the last
/// token's state that emits a non-blank symbol.
inline std::vector<OracleSpan> oracle_spans(const OraclePath& path, const std::vector<std::size_t>& utterance_sizes,
                                            std::size_t blank) {
  std::vector<OracleSpan> spans;
  std::size_t consumed = 0;
  for (std::size_t size : utterance_sizes) {
    const std::size_t first = consumed + 1;
    const std::size_t last = consumed + size;
    OracleSpan span{0, 0};
    bool found = false;
    for (std::size_t t = 0; t < path.states.size(); ++t) {
      const std::size_t before = t == 0 ? 0 : path.states[t - 1];
      if (!found && path.states[t] == first && before + 1 == first) {
        span.start_frame = t;
        found = true;
      }
      if (path.states[t] == last && path.symbols[t] != blank) span.end_frame = t;
    }
    spans.push_back(span);
    consumed = last;
  }
  return spans;
}

/// Random instance: each frame's row is the log of a normalized random
/// distribution over C classes.
inline align::LogPosteriorMatrix random_matrix(std::mt19937_64& rng, std::size_t T, std::size_t C,
                                               double frame_s = 0.02) {
  std::vector<std::string> tokens{"<blank>"};
  for (std::size_t c = 1; c < C; ++c) tokens.push_back(std::string(1, static_cast<char>('a' + c - 1)));
  align::LogPosteriorMatrix m;
  m.frames = T;
  m.classes = C;
  m.frame_duration_s = frame_s;
  m.vocabulary = align::Vocabulary(tokens);
  m.values.resize(T * C);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (std::size_t t = 0; t < T; ++t) {
    double total = 0.0;
    std::vector<double> p(C);
    for (auto& v : p) total += (v = u(rng));
    for (std::size_t c = 0; c < C; ++c) m.at(t, c) = std::log(p[c] / total);
  }
  return m;
}

}  // namespace pitchside::testing
