// Copyright 2026 The cjfit Authors.
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

#include <atomic>
#include <cstdlib>
#include <string>

#include "cj/errors.hpp"
#include "cj/kernels.hpp"

namespace cj::kernels {
namespace {

Isa DetectIsa() {
  if (const char* env = std::getenv("CJ_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && avx2_supported()) return Isa::kAvx2;
  }
  return avx2_supported() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& ActiveIsaSlot() {
  static std::atomic<Isa> slot{DetectIsa()};
  return slot;
}

}  // namespace

bool avx2_supported() {
#if defined(CJ_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

Isa active_isa() { return ActiveIsaSlot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !avx2_supported()) {
    throw DomainError("AVX2 kernels are not supported on this CPU");
  }
  ActiveIsaSlot().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

RowMoments row_moments(double x, std::span<const double> lambda,
                       std::span<const double> weights) {
  if (lambda.size() != weights.size()) {
    throw DomainError("row_moments: lambda and weight rows differ in length");
  }
  if (active_isa() == Isa::kAvx2) {
    return row_moments_avx2(x, lambda.data(), weights.data(), lambda.size());
  }
  return row_moments_scalar(x, lambda.data(), weights.data(), lambda.size());
}

}  // namespace cj::kernels
