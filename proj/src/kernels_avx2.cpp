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

// Compiled with -mavx2 -mfma on x86-64; dispatch guarantees these functions
// only run on CPUs that support both.

#include "cj/kernels.hpp"

#if defined(CJ_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cmath>

namespace cj::kernels {
namespace {

// exp(x) for x <= 0, Cephes rational approximation, ~1 ulp. Inputs below
// -708 are clamped (result ~3e-308 instead of a denormal or zero).
inline __m256d ExpNonPositive(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  x = _mm256_max_pd(x, lo);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);

  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                     _MM_FROUND_TO_NEAREST_INT |
                                         _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(fx, c1, x);
  r = _mm256_fnmadd_pd(fx, c2, r);
  const __m256d rr = _mm256_mul_pd(r, r);

  __m256d px = _mm256_set1_pd(1.26177193074810590878E-4);
  px = _mm256_fmadd_pd(px, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_fmadd_pd(px, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, r);

  __m256d qx = _mm256_set1_pd(3.00198505138664455042E-6);
  qx = _mm256_fmadd_pd(qx, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_fmadd_pd(qx, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_fmadd_pd(qx, rr, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // Multiply by 2^fx through the exponent field.
  const __m128i k32 = _mm256_cvtpd_epi32(fx);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  k64 = _mm256_slli_epi64(k64, 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(k64));
}

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

RowMoments row_moments_avx2(double x, const double* lambda,
                            const double* weights, std::size_t n) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);

  __m256d acc_wp = zero, acc_wi = zero, acc_p = zero, acc_i = zero;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = _mm256_sub_pd(vx, _mm256_loadu_pd(lambda + j));
    const __m256d neg_abs = _mm256_or_pd(d, sign_mask);
    const __m256d e = ExpNonPositive(neg_abs);
    const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(one, e));
    const __m256d small = _mm256_mul_pd(e, inv);
    // d >= 0 -> 1/(1+e); d < 0 -> e/(1+e)
    const __m256d nonneg = _mm256_cmp_pd(d, zero, _CMP_GE_OQ);
    const __m256d p = _mm256_blendv_pd(small, inv, nonneg);
    const __m256d info = _mm256_mul_pd(small, inv);
    const __m256d w = _mm256_loadu_pd(weights + j);
    acc_wp = _mm256_fmadd_pd(w, p, acc_wp);
    acc_wi = _mm256_fmadd_pd(w, info, acc_wi);
    acc_p = _mm256_add_pd(acc_p, p);
    acc_i = _mm256_add_pd(acc_i, info);
  }
  RowMoments out;
  out.weighted_p = HorizontalSum(acc_wp);
  out.weighted_info = HorizontalSum(acc_wi);
  out.sum_p = HorizontalSum(acc_p);
  out.sum_info = HorizontalSum(acc_i);
  if (j < n) {
    const RowMoments tail = row_moments_scalar(x, lambda + j, weights + j, n - j);
    out.weighted_p += tail.weighted_p;
    out.weighted_info += tail.weighted_info;
    out.sum_p += tail.sum_p;
    out.sum_info += tail.sum_info;
  }
  return out;
}

}  // namespace cj::kernels

#else

#include "cj/errors.hpp"

namespace cj::kernels {

RowMoments row_moments_avx2(double, const double*, const double*,
                            std::size_t) {
  throw DomainError("AVX2 kernels are not compiled into this build");
}

}  // namespace cj::kernels

#endif
