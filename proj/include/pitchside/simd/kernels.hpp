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

// Data-parallel inner loops shared by the signal and alignment code.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant compiled in its own translation unit. The active table is picked
// once at runtime from CPUID; PITCHSIDE_SIMD=scalar forces the reference
// path. Variants are required to agree bit-for-bit except for the two
// reductions (sum_squares, dot), whose accumulation order differs and which
// agree to a relative 1e-12.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pitchside::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  /// Σ x², accumulated in double.
  double (*sum_squares)(std::span<const float> x);

  /// Σ a[i]·b[i] over min(|a|, |b|) elements, accumulated in double.
  double (*dot)(std::span<const float> a, std::span<const float> b);

  /// out[i] = float(double(a[i]) + gain·double(b[i])). Sizes must match.
  void (*scaled_add)(std::span<const float> a, std::span<const float> b, double gain,
                     std::span<float> out);

  /// max |x[i]|, 0 for an empty span.
  float (*max_abs)(std::span<const float> x);

  /// One time step of the stay/advance alignment trellis over states
  /// [first, last], 1 <= first:
  ///   stay[j]  = prev[j] + (repeat ? max(blank, emit[j]) : blank)
  ///   adv[j]   = prev[j-1] + emit[j]
  ///   cur[j]   = max(stay[j], adv[j]); advanced[j] = adv[j] >= stay[j]
  /// A tie marks the cell as entered at this frame, so backtracking puts
  /// token onsets as late as possible.
  void (*trellis_step)(std::span<const double> prev, std::span<const double> emit,
                       double blank, bool repeat, std::size_t first, std::size_t last,
                       std::span<double> cur, std::span<std::uint8_t> advanced);
};

/// Table chosen for this process (CPU detection + PITCHSIDE_SIMD override).
const KernelTable& active();

/// Table for a specific ISA; throws if it is not supported on this CPU.
const KernelTable& table(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available();

namespace scalar {
extern const KernelTable kTable;
}

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace pitchside::simd
