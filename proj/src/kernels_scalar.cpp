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

#include <cmath>

#include "cj/kernels.hpp"

namespace cj::kernels {

RowMoments row_moments_scalar(double x, const double* lambda,
                              const double* weights, std::size_t n) {
  RowMoments out;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = x - lambda[j];
    const double e = std::exp(-std::fabs(d));
    const double inv = 1.0 / (1.0 + e);
    const double p = d >= 0 ? inv : e * inv;
    const double info = e * inv * inv;
    out.weighted_p += weights[j] * p;
    out.weighted_info += weights[j] * info;
    out.sum_p += p;
    out.sum_info += info;
  }
  return out;
}

}  // namespace cj::kernels
