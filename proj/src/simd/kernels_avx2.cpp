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

// Built with -mavx2 -mfma -ffp-contract=off. Only reached through the
// dispatch table after CPUID confirms AVX2 and FMA.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "pitchside/simd/kernels.hpp"

namespace pitchside::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_squares(std::span<const float> x) {
  const float* p = x.data();
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(p + i);
    const __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
    const __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
    acc0 = _mm256_fmadd_pd(lo, lo, acc0);
    acc1 = _mm256_fmadd_pd(hi, hi, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(p[i]) * p[i];
  return acc;
}

double dot(std::span<const float> a, std::span<const float> b) {
  const std::size_t n = std::min(a.size(), b.size());
  const float* pa = a.data();
  const float* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(pa + i);
    const __m256 vb = _mm256_loadu_ps(pb + i);
    acc0 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                           _mm256_cvtps_pd(_mm256_castps256_ps128(vb)), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                           _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)), acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(pa[i]) * pb[i];
  return acc;
}

void scaled_add(std::span<const float> a, std::span<const float> b, double gain,
                std::span<float> out) {
  const std::size_t n = out.size();
  const __m256d g = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_cvtps_pd(_mm_loadu_ps(a.data() + i));
    const __m256d vb = _mm256_cvtps_pd(_mm_loadu_ps(b.data() + i));
    // Separate multiply and add so rounding matches the scalar reference.
    const __m256d sum = _mm256_add_pd(va, _mm256_mul_pd(g, vb));
    _mm_storeu_ps(out.data() + i, _mm256_cvtpd_ps(sum));
  }
  for (; i < n; ++i) {
    const double scaled = gain * static_cast<double>(b[i]);
    out[i] = static_cast<float>(static_cast<double>(a[i]) + scaled);
  }
}

float max_abs(std::span<const float> x) {
  const std::size_t n = x.size();
  const __m256 sign_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
  __m256 m = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    m = _mm256_max_ps(m, _mm256_and_ps(_mm256_loadu_ps(x.data() + i), sign_mask));
  }
  alignas(32) float lanes[8];
  _mm256_store_ps(lanes, m);
  float r = 0.0f;
  for (float v : lanes) r = std::max(r, v);
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

void trellis_step(std::span<const double> prev, std::span<const double> emit, double blank,
                  bool repeat, std::size_t first, std::size_t last, std::span<double> cur,
                  std::span<std::uint8_t> advanced) {
  const __m256d vblank = _mm256_set1_pd(blank);
  std::size_t j = first;
  for (; j + 3 <= last; j += 4) {
    const __m256d e = _mm256_loadu_pd(emit.data() + j);
    const __m256d stay_cost = repeat ? _mm256_max_pd(vblank, e) : vblank;
    const __m256d stay = _mm256_add_pd(_mm256_loadu_pd(prev.data() + j), stay_cost);
    const __m256d adv = _mm256_add_pd(_mm256_loadu_pd(prev.data() + j - 1), e);
    const __m256d take_adv = _mm256_cmp_pd(adv, stay, _CMP_GE_OQ);
    _mm256_storeu_pd(cur.data() + j, _mm256_blendv_pd(stay, adv, take_adv));
    const int bits = _mm256_movemask_pd(take_adv);
    advanced[j] = bits & 1;
    advanced[j + 1] = (bits >> 1) & 1;
    advanced[j + 2] = (bits >> 2) & 1;
    advanced[j + 3] = (bits >> 3) & 1;
  }
  for (; j <= last; ++j) {
    const double stay_cost = repeat ? std::max(blank, emit[j]) : blank;
    const double stay = prev[j] + stay_cost;
    const double adv = prev[j - 1] + emit[j];
    const bool take_adv = adv >= stay;
    cur[j] = take_adv ? adv : stay;
    advanced[j] = take_adv ? 1 : 0;
  }
}

}  // namespace

const KernelTable kTable{Isa::kAvx2, &sum_squares, &dot, &scaled_add, &max_abs, &trellis_step};

}  // namespace pitchside::simd::avx2
