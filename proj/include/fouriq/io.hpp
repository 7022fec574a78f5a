// Copyright 2026 The Fouriq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOURIQ_IO_HPP
#define FOURIQ_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fouriq/common.hpp"

namespace fouriq {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

inline uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ---------------------------------------------------------------------------
// Plot emission. Plots are conveniences for inspection, written as plain SVG
// with no timestamps so identical runs produce identical bytes.
// ---------------------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f6fb2";
  bool draw_line = true;
};

namespace detail {

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

inline std::string svg_plot(const std::vector<PlotSeries>& series, const std::string& title,
                            const std::string& xlabel, const std::string& ylabel, bool logx,
                            bool logy, const std::string& comment) {
  const double width = 640, height = 420;
  const double ml = 70, mr = 25, mt = 40, mb = 55;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double x) { return logx ? std::log10(std::max(x, 1e-300)) : x; };
  auto ty = [&](double y) { return logy ? std::log10(std::max(std::abs(y), 1e-300)) : y; };
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
  }
  if (ymin > ymax) {
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (ty(y) - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  if (!comment.empty()) svg << "<!-- " << comment << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    const double gx = ml + (width - ml - mr) * t / 4.0;
    const double gy = height - mb - (height - mt - mb) * t / 4.0;
    svg << "<line x1=\"" << gx << "\" y1=\"" << height - mb << "\" x2=\"" << gx << "\" y2=\""
        << height - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << gx << "\" y=\"" << height - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">"
        << detail::fmt_num(logx ? std::pow(10, fx) : fx) << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml << "\" y2=\"" << gy
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << detail::fmt_num(logy ? std::pow(10, fy) : fy) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << (mt + height - mb) / 2 << ")\">" << ylabel << "</text>\n";
  int legend_row = 0;
  for (const auto& s : series) {
    if (s.draw_line && s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) svg << px(x) << "," << py(y) << " ";
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << s.color
          << "\"/>\n";
    if (!s.label.empty()) {
      const double lx = width - mr - 150, ly = mt + 14 + 16 * legend_row++;
      svg << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << lx + 28 << "\" y=\"" << ly << "\" font-size=\"12\">" << s.label
          << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Stem plot of coefficient magnitudes against the flat lattice index.
inline std::string svg_stem_plot(const std::vector<double>& magnitudes,
                                 const std::vector<std::string>& labels, const std::string& title,
                                 const std::string& comment) {
  const double width = 640, height = 420;
  const double ml = 70, mr = 25, mt = 40, mb = 70;
  double ymax = 1e-12;
  for (double v : magnitudes) ymax = std::max(ymax, v);
  const long n = static_cast<long>(magnitudes.size());
  auto px = [&](long i) {
    return n > 1 ? ml + (width - ml - mr) * static_cast<double>(i) / static_cast<double>(n - 1)
                 : (ml + width - mr) / 2;
  };
  auto py = [&](double v) { return height - mb - (height - mt - mb) * v / (ymax * 1.1); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  if (!comment.empty()) svg << "<!-- " << comment << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(ymax) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt_num(ymax) << "</text>\n";
  for (long i = 0; i < n; ++i) {
    svg << "<line x1=\"" << px(i) << "\" y1=\"" << height - mb << "\" x2=\"" << px(i) << "\" y2=\""
        << py(magnitudes[i]) << "\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n";
    svg << "<circle cx=\"" << px(i) << "\" cy=\"" << py(magnitudes[i])
        << "\" r=\"3.5\" fill=\"#1f6fb2\"/>\n";
    if (n <= 30 && i < static_cast<long>(labels.size()))
      svg << "<text x=\"" << px(i) << "\" y=\"" << height - mb + 16
          << "\" text-anchor=\"middle\" font-size=\"10\" transform=\"rotate(45 " << px(i) << " "
          << height - mb + 16 << ")\">" << labels[i] << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\" font-size=\"13\">frequency</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

/// Symmetric-matrix heatmap (Gram matrices).
inline std::string svg_heatmap(const std::vector<std::vector<double>>& m, const std::string& title,
                               const std::string& comment) {
  const long n = static_cast<long>(m.size());
  const double cell = std::min(24.0, 360.0 / std::max(1L, n));
  const double ml = 60, mt = 50;
  const double width = ml + cell * n + 40, height = mt + cell * n + 40;
  double vmax = 1e-12;
  for (const auto& row : m)
    for (double v : row) vmax = std::max(vmax, std::abs(v));
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  if (!comment.empty()) svg << "<!-- " << comment << " -->\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
      << " (|max| = " << detail::fmt_num(vmax) << ")</text>\n";
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < static_cast<long>(m[i].size()); ++j) {
      const double t = m[i][j] / vmax;  // [-1, 1]
      const int r = t >= 0 ? 255 : static_cast<int>(255 * (1 + t));
      const int b = t <= 0 ? 255 : static_cast<int>(255 * (1 - t));
      const int g = static_cast<int>(255 * (1 - std::abs(t)));
      svg << "<rect x=\"" << ml + j * cell << "\" y=\"" << mt + i * cell << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"rgb(" << r << "," << g << "," << b << ")\"/>\n";
    }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fouriq

#endif  // FOURIQ_IO_HPP
