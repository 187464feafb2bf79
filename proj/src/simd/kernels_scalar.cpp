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

#include <algorithm>
#include <cmath>

#include "pitchside/simd/kernels.hpp"

namespace pitchside::simd::scalar {
namespace {

double sum_squares(std::span<const float> x) {
  double acc = 0.0;
  for (float v : x) acc += static_cast<double>(v) * v;
  return acc;
}

double dot(std::span<const float> a, std::span<const float> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

void scaled_add(std::span<const float> a, std::span<const float> b, double gain,
                std::span<float> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double scaled = gain * static_cast<double>(b[i]);
    out[i] = static_cast<float>(static_cast<double>(a[i]) + scaled);
  }
}

float max_abs(std::span<const float> x) {
  float m = 0.0f;
  for (float v : x) m = std::max(m, std::fabs(v));
  return m;
}

void trellis_step(std::span<const double> prev, std::span<const double> emit, double blank,
                  bool repeat, std::size_t first, std::size_t last, std::span<double> cur,
                  std::span<std::uint8_t> advanced) {
  for (std::size_t j = first; j <= last; ++j) {
    const double stay_cost = repeat ? std::max(blank, emit[j]) : blank;
    const double stay = prev[j] + stay_cost;
    const double adv = prev[j - 1] + emit[j];
    const bool take_adv = adv >= stay;
    cur[j] = take_adv ? adv : stay;
    advanced[j] = take_adv ? 1 : 0;
  }
}

}  // namespace

const KernelTable kTable{Isa::kScalar, &sum_squares, &dot, &scaled_add, &max_abs, &trellis_step};

}  // namespace pitchside::simd::scalar
