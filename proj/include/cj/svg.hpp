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

#include <string>

#include "cj/model.hpp"

namespace cj {

// Grayscale heatmap of a square matrix: one rect per cell, black at the
// maximum and white at the minimum, with a title and index ticks on both
// axes. Row 0 is at the top.
std::string heatmap_svg(const Matrix& matrix, const std::string& title);

void write_heatmap(const std::string& path, const Matrix& matrix,
                   const std::string& title);

}  // namespace cj
