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
#include <cstdint>
#include <string_view>
#include <vector>

#include "pitchside/corpus/record.hpp"

namespace pitchside::corpus {

enum class SplitStrategy { kRandom, kChronological };

std::string_view to_string(SplitStrategy strategy);
SplitStrategy parse_split_strategy(std::string_view text);

struct SplitSpec {
  std::size_t n_dev = 25;
  std::size_t n_test = 25;
  std::uint64_t seed = 1234;
  SplitStrategy strategy = SplitStrategy::kRandom;
};

struct SplitResult {
  std::vector<UtteranceRecord> train;
  std::vector<UtteranceRecord> dev;
  std::vector<UtteranceRecord> test;
};

/// Random: records are sorted by utt_id, shuffled with a seeded
/// Fisher-Yates, then dev takes the first n_dev and test the next n_test.
/// Chronological: ordered by (recording_id, start_s, utt_id); train is the
/// earliest, test the latest. Each partition comes back sorted by utt_id.
/// Throws kNotEnoughRecords unless n_dev + n_test < size, and
/// kDuplicateUttId.
SplitResult split(std::vector<UtteranceRecord> records, const SplitSpec& spec);

/// Index permutation of [0, n) used by the random strategy. Portable: the
/// bounded draws come from mt19937_64 by rejection, not from a
/// library distribution.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace pitchside::corpus
