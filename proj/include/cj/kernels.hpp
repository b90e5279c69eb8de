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

#pragma once

// Row reductions over the Bradley-Terry probability p(x - lambda_j).
//
// These are the inner loops of every Gauss-Seidel update and penalty
// evaluation. A scalar reference implementation is always available; an
// AVX2+FMA variant is selected at runtime when the CPU supports it. Both
// produce the same sums up to floating-point reassociation (tested to a
// relative 1e-13).

#include <cstddef>
#include <span>
#include <string_view>

namespace cj::kernels {

// For a fixed log-strength x and a row of weights w_j, with
// p_j = 1 / (1 + exp(lambda_j - x)):
struct RowMoments {
  double weighted_p = 0;     // sum_j w_j p_j
  double weighted_info = 0;  // sum_j w_j p_j (1 - p_j)
  double sum_p = 0;          // sum_j p_j
  double sum_info = 0;       // sum_j p_j (1 - p_j)
};

using RowMomentsFn = RowMoments (*)(double x, const double* lambda,
                                    const double* weights, std::size_t n);

RowMoments row_moments_scalar(double x, const double* lambda,
                              const double* weights, std::size_t n);

// Only callable when avx2_supported() is true.
RowMoments row_moments_avx2(double x, const double* lambda,
                            const double* weights, std::size_t n);

enum class Isa { kScalar, kAvx2 };

bool avx2_supported();

// The implementation used by row_moments(). Chosen once from CPU features;
// the CJ_SIMD environment variable ("scalar" or "avx2") overrides it.
Isa active_isa();
void set_active_isa(Isa isa);  // throws DomainError if unsupported
std::string_view isa_name(Isa isa);

RowMoments row_moments(double x, std::span<const double> lambda,
                       std::span<const double> weights);

}  // namespace cj::kernels
