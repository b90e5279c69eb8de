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

#include "cj/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cj {
namespace {

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string heatmap_svg(const Matrix& matrix, const std::string& title) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw DomainError("heatmap needs a non-empty square matrix");
  }
  const Index n = matrix.rows();
  constexpr double kPlot = 500.0;
  constexpr double kMargin = 50.0;
  const double cell = kPlot / static_cast<double>(n);
  const double lo = matrix.minCoeff();
  const double hi = matrix.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream out;
  out.precision(6);
  const double size = kPlot + 2 * kMargin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' ' << size
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << size / 2 << "\" y=\"" << kMargin / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << Escape(title) << "</text>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double t = (matrix(i, j) - lo) / span;
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", g, g, g);
      out << "<rect x=\"" << kMargin + j * cell << "\" y=\"" << kMargin + i * cell
          << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
          << color << "\"/>\n";
    }
  }
  out << "</g>\n";
  const Index step = std::max<Index>(1, (n + 9) / 10);
  for (Index k = 0; k < n; k += step) {
    const double c = kMargin + (static_cast<double>(k) + 0.5) * cell;
    out << "<text x=\"" << c << "\" y=\"" << kMargin + kPlot + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << k << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << c + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << k << "</text>\n";
  }
  out << "<text x=\"" << size / 2 << "\" y=\"" << size - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         "item j</text>\n";
  out << "<text x=\"14\" y=\"" << size / 2 << "\" transform=\"rotate(-90 14 "
      << size / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         "item i</text>\n";
  out << "</svg>\n";
  return out.str();
}

void write_heatmap(const std::string& path, const Matrix& matrix,
                   const std::string& title) {
  const std::string svg = heatmap_svg(matrix, title);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << svg;
  if (!out) throw IoError(path, "write failed");
}

}  // namespace cj
