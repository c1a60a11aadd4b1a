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

#include "atlas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "atlas/errors.hpp"

namespace atlas::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::string text(double x, double y, const std::string& s, int size = 10,
                 const char* anchor = "start", const char* fill = "black") {
  std::ostringstream out;
  out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" "
      << "font-size=\"" << size << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">"
      << escape(s) << "</text>\n";
  return out.str();
}

std::string line(double x1, double y1, double x2, double y2, const char* stroke = "black",
                 double width = 1.0) {
  std::ostringstream out;
  out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
      << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
  return out.str();
}

}  // namespace

std::string render_line_chart(const LineChart& chart) {
  const double left = 70, right = 170, top = 48, bottom = 50;
  const double plot_w = chart.width - left - right;
  const double plot_h = chart.height - top - bottom;

  Extent xs, ys;
  for (const auto& s : chart.series)
    for (const auto& [x, y] : s.points) {
      xs.add(x);
      ys.add(y);
    }
  xs.pad();
  ys.pad();

  auto px = [&](double x) { return left + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - ys.lo) / (ys.hi - ys.lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\""
      << chart.height << "\" viewBox=\"0 0 " << chart.width << " " << chart.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << text(left, 20, chart.title, 14);
  if (!chart.footnote.empty()) out << text(left, 36, chart.footnote, 10, "start", "#555555");

  out << line(left, top, left, top + plot_h);
  out << line(left, top + plot_h, left + plot_w, top + plot_h);

  for (int i = 0; i <= 5; ++i) {
    const double xv = xs.lo + (xs.hi - xs.lo) * i / 5.0;
    const double yv = ys.lo + (ys.hi - ys.lo) * i / 5.0;
    out << line(px(xv), top + plot_h, px(xv), top + plot_h + 4);
    out << text(px(xv), top + plot_h + 16, num(xv), 10, "middle");
    out << line(left - 4, py(yv), left, py(yv));
    out << text(left - 8, py(yv) + 3, num(yv), 10, "end");
  }
  out << text(left + plot_w / 2, chart.height - 10, chart.x_label, 11, "middle");
  out << "<text x=\"16\" y=\"" << num(top + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << num(top + plot_h / 2) << ")\">" << escape(chart.y_label)
      << "</text>\n";

  int color_index = 0;
  double legend_y = top + 10;
  for (const auto& s : chart.series) {
    const char* color = kPalette[color_index % kPaletteSize];
    ++color_index;
    if (!s.points.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (s.dashed) out << " stroke-dasharray=\"5,4\"";
      out << " points=\"";
      for (const auto& [x, y] : s.points) out << num(px(x)) << "," << num(py(y)) << " ";
      out << "\"/>\n";
    }
    const double lx = left + plot_w + 12;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(legend_y - 4) << "\" x2=\""
        << num(lx + 18) << "\" y2=\"" << num(legend_y - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    out << text(lx + 24, legend_y, s.label, 10);
    legend_y += 14;
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_triangle_series(const std::vector<TrianglePanel>& panels,
                                   const std::string& base_left, const std::string& base_right,
                                   const std::string& apex) {
  if (panels.empty()) throw ValidationError("triangle series needs at least one panel");

  const double pad = 14;
  const double panel_w = 170, panel_h = 200;
  const double strip_h = 130;
  const int width = static_cast<int>(panels.size() * panel_w + 2 * pad);
  const int height = static_cast<int>(panel_h + strip_h + 4 * pad + 20);

  double max_side = 0.0;
  for (const auto& p : panels)
    max_side = std::max({max_side, p.stats.base, p.stats.side_a, p.stats.side_b});
  if (max_side <= 0.0) max_side = 1.0;
  const double scale = (panel_w - 40) / max_side;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << text(pad, 16, base_left + "-" + base_right + "-" + apex + " triangle by period", 13);

  const double ybase = 20 + panel_h - 30;
  for (size_t i = 0; i < panels.size(); ++i) {
    const auto& s = panels[i].stats;
    const double x0 = pad + i * panel_w + 20;
    const double bx = x0 + s.base * scale;

    if (s.degenerate) {
      out << line(x0, ybase, bx, ybase, "#d62728", 1.5);
      out << text(x0 + s.base * scale / 2, ybase - 8, "degenerate", 9, "middle", "#d62728");
    } else {
      // Apex position from the three side lengths; base sits on the x axis.
      const double ax =
          (s.base * s.base + s.side_a * s.side_a - s.side_b * s.side_b) / (2.0 * s.base);
      const double apex_x = x0 + ax * scale;
      const double apex_y = ybase - s.height * scale;
      out << "<polygon points=\"" << num(x0) << "," << num(ybase) << " " << num(bx) << ","
          << num(ybase) << " " << num(apex_x) << "," << num(apex_y)
          << "\" fill=\"#1f77b433\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n";
      out << text(apex_x, apex_y - 5, apex, 9, "middle");
    }
    out << text(x0, ybase + 12, base_left, 9, "middle");
    out << text(bx, ybase + 12, base_right, 9, "middle");
    out << text(x0 + s.base * scale / 2, ybase + 26, panels[i].period_label, 10, "middle");
  }

  // Height-by-period strip under the panels.
  Extent hs;
  for (const auto& p : panels) hs.add(p.stats.height);
  hs.pad();
  const double strip_top = panel_h + 3 * pad + 20;
  const double strip_left = pad + 50;
  const double strip_w = width - strip_left - pad;
  auto sy = [&](double h) {
    return strip_top + strip_h - (h - hs.lo) / (hs.hi - hs.lo) * strip_h;
  };
  out << line(strip_left, strip_top, strip_left, strip_top + strip_h);
  out << line(strip_left, strip_top + strip_h, strip_left + strip_w, strip_top + strip_h);
  out << "<text x=\"20\" y=\"" << num(strip_top + strip_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << num(strip_top + strip_h / 2) << ")\">height H</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < panels.size(); ++i) {
    const double cx = strip_left + (i + 0.5) / panels.size() * strip_w;
    out << num(cx) << "," << num(sy(panels[i].stats.height)) << " ";
  }
  out << "\"/>\n";
  for (size_t i = 0; i < panels.size(); ++i) {
    const double cx = strip_left + (i + 0.5) / panels.size() * strip_w;
    out << text(cx, strip_top + strip_h + 14, panels[i].period_label, 9, "middle");
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_tetra_series(const std::vector<TetraPanel>& panels,
                                const std::vector<std::string>& parties) {
  if (panels.empty()) throw ValidationError("tetrahedron series needs at least one panel");
  if (parties.size() != 4) throw ValidationError("tetrahedron series needs four parties");

  const double pad = 14;
  const double panel_w = 200, panel_h = 220;
  const int width = static_cast<int>(panels.size() * panel_w + 2 * pad);
  const int height = static_cast<int>(panel_h + 3 * pad + 24);

  // Fixed oblique orthographic view.
  const double theta = 0.60, phi = 0.35;
  auto project = [&](double x, double y, double z) {
    const double u = x * std::cos(theta) + z * std::sin(theta);
    const double w = -x * std::sin(theta) + z * std::cos(theta);
    const double v = y * std::cos(phi) - w * std::sin(phi);
    return std::make_pair(u, v);
  };

  double max_extent = 1e-12;
  double max_radius = 1e-12;
  for (const auto& p : panels) {
    if (p.coordinates.rows() != 4 || p.coordinates.cols() != 3)
      throw ValidationError("tetrahedron panels need 4x3 coordinates");
    for (int i = 0; i < 4; ++i) {
      auto [u, v] = project(p.coordinates(i, 0), p.coordinates(i, 1), p.coordinates(i, 2));
      max_extent = std::max({max_extent, std::abs(u), std::abs(v)});
    }
    for (const auto& s : p.spheres) max_radius = std::max(max_radius, s.radius);
  }
  const double scale = (panel_w / 2 - 34) / max_extent;
  const double radius_scale = 22.0 / max_radius;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << text(pad, 16, "four-party collaboration tetrahedron by period", 13);

  for (size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double cx = pad + p * panel_w + panel_w / 2;
    const double cy = 24 + panel_h / 2;

    double px[4], py[4];
    for (int i = 0; i < 4; ++i) {
      auto [u, v] = project(panel.coordinates(i, 0), panel.coordinates(i, 1),
                            panel.coordinates(i, 2));
      px[i] = cx + u * scale;
      py[i] = cy - v * scale;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) out << line(px[i], py[i], px[j], py[j], "#999999", 1.0);
    for (int i = 0; i < 4; ++i) {
      double r = 6.0;
      for (const auto& s : panel.spheres)
        if (s.party == parties[i]) r = std::max(2.0, s.radius * radius_scale);
      out << "<circle cx=\"" << num(px[i]) << "\" cy=\"" << num(py[i]) << "\" r=\"" << num(r)
          << "\" fill=\"" << kPalette[i % kPaletteSize] << "\" fill-opacity=\"0.55\" stroke=\""
          << kPalette[i % kPaletteSize] << "\"/>\n";
      out << text(px[i], py[i] - r - 3, parties[i], 9, "middle");
    }
    out << text(cx, 24 + panel_h + 12, panel.period_label, 10, "middle");
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace atlas::svg
