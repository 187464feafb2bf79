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

#include <cstdlib>
#include <string>

#include "pitchside/error.hpp"
#include "pitchside/simd/kernels.hpp"

namespace pitchside::simd {
namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* forced = std::getenv("PITCHSIDE_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return scalar::kTable;
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return avx2::kTable;
#endif
  return scalar::kTable;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return scalar::kTable;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (cpu_has_avx2()) return avx2::kTable;
#endif
      break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "kernel ISA not supported on this CPU: " + std::string(to_string(isa)));
}

std::vector<Isa> available() {
  std::vector<Isa> isas{Isa::kScalar};
  if (cpu_has_avx2()) isas.push_back(Isa::kAvx2);
  return isas;
}

}  // namespace pitchside::simd
