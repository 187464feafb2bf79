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

#include "pitchside/corpus/split.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "pitchside/error.hpp"

namespace pitchside::corpus {

std::string_view to_string(SplitStrategy strategy) {
  return strategy == SplitStrategy::kRandom ? "random" : "chronological";
}

SplitStrategy parse_split_strategy(std::string_view text) {
  if (text == "random") return SplitStrategy::kRandom;
  if (text == "chronological") return SplitStrategy::kChronological;
  throw Error(ErrorCode::kConfigError, "unknown split strategy '" + std::string(text) + "'");
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(perm[i - 1], perm[draw % bound]);
  }
  return perm;
}

SplitResult split(std::vector<UtteranceRecord> records, const SplitSpec& spec) {
  const std::size_t total = records.size();
  if (spec.n_dev + spec.n_test >= total) {
    throw Error(ErrorCode::kNotEnoughRecords, "need more than " + std::to_string(spec.n_dev + spec.n_test) +
                                                  " records, got " + std::to_string(total));
  }
  auto by_id = [](const UtteranceRecord& a, const UtteranceRecord& b) { return a.utt_id < b.utt_id; };
  std::sort(records.begin(), records.end(), by_id);
  for (std::size_t i = 1; i < total; ++i) {
    if (records[i].utt_id == records[i - 1].utt_id) throw Error(ErrorCode::kDuplicateUttId, records[i].utt_id);
  }

  std::vector<UtteranceRecord> ordered;
  ordered.reserve(total);
  if (spec.strategy == SplitStrategy::kRandom) {
    for (std::size_t idx : seeded_permutation(total, spec.seed)) ordered.push_back(std::move(records[idx]));
  } else {
    std::stable_sort(records.begin(), records.end(), [](const UtteranceRecord& a, const UtteranceRecord& b) {
      return std::tie(a.recording_id, a.start_s) < std::tie(b.recording_id, b.start_s);
    });
    // Latest records go to test, the ones before them to dev.
    const std::size_t n_train = total - spec.n_dev - spec.n_test;
    for (std::size_t i = 0; i < spec.n_dev; ++i) ordered.push_back(std::move(records[n_train + i]));
    for (std::size_t i = 0; i < spec.n_test; ++i) ordered.push_back(std::move(records[n_train + spec.n_dev + i]));
    for (std::size_t i = 0; i < n_train; ++i) ordered.push_back(std::move(records[i]));
  }

  SplitResult out;
  auto begin = std::make_move_iterator(ordered.begin());
  out.dev.assign(begin, begin + spec.n_dev);
  out.test.assign(begin + spec.n_dev, begin + spec.n_dev + spec.n_test);
  out.train.assign(begin + spec.n_dev + spec.n_test, std::make_move_iterator(ordered.end()));
  for (auto* part : {&out.train, &out.dev, &out.test}) std::sort(part->begin(), part->end(), by_id);
  return out;
}

}  // namespace pitchside::corpus
