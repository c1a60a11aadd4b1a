/*
 * Copyright 2026 The atlas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

#include "atlas/geometry.hpp"

namespace atlas::svg {

// Hand-emitted static SVG. No charting dependency; output is plain text
// and fully determined by the inputs.

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
  bool dashed = false;                            // used for model projections
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::string footnote;  // small print under the title, e.g. provenance
  int width = 860;
  int height = 480;
};

std::string render_line_chart(const LineChart& chart);

struct TrianglePanel {
  std::string period_label;
  geometry::TriangleStats stats;
};

/// Row of triangle snapshots (base party left/right, apex up) with the
/// height series plotted beneath.
std::string render_triangle_series(const std::vector<TrianglePanel>& panels,
                                   const std::string& base_left, const std::string& base_right,
                                   const std::string& apex);

struct TetraPanel {
  std::string period_label;
  Eigen::MatrixXd coordinates;  // 4 x 3, aligned across panels
  std::vector<geometry::SphereScale> spheres;
};

/// Row of orthographic tetrahedron projections, sphere area tracking the
/// cube root scaling so sizes compare across panels.
std::string render_tetra_series(const std::vector<TetraPanel>& panels,
                                const std::vector<std::string>& parties);

}  // namespace atlas::svg
