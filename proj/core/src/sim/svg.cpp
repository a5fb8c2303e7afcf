// Copyright (c) 2026 The socnav authors
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

#include "socnav/sim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace socnav::sim {

namespace {

constexpr double kScale = 60.0;  // pixels per meter

struct Bounds {
  double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;

  void include(const Vec2& p, double r) {
    min_x = std::min(min_x, p.x - r);
    min_y = std::min(min_y, p.y - r);
    max_x = std::max(max_x, p.x + r);
    max_y = std::max(max_y, p.y + r);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(const Bounds& b) : b_(b) {}

  // SVG y grows downward; world y grows upward.
  std::string x(double wx) const { return fmt((wx - b_.min_x) * kScale); }
  std::string y(double wy) const { return fmt((b_.max_y - wy) * kScale); }
  double width() const { return (b_.max_x - b_.min_x) * kScale; }
  double height() const { return (b_.max_y - b_.min_y) * kScale; }

 private:
  Bounds b_;
};

void draw_path(std::ostringstream& out, const Canvas& c,
               const std::vector<Vec2>& pts, const char* color,
               double width) {
  if (pts.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
      << fmt(width) << "\" points=\"";
  for (const Vec2& p : pts) out << c.x(p.x) << ',' << c.y(p.y) << ' ';
  out << "\"/>\n";
}

void draw_circle(std::ostringstream& out, const Canvas& c, const Vec2& p,
                 double r, const char* stroke, const char* fill,
                 bool dashed = false) {
  out << "<circle cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y) << "\" r=\""
      << fmt(r * kScale) << "\" stroke=\"" << stroke << "\" fill=\"" << fill
      << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"4,3\"";
  out << "/>\n";
}

}  // namespace

std::string episode_log_to_svg(const EpisodeLog& log, double social_margin) {
  Bounds bounds;
  for (const EpisodeStep& step : log.steps) {
    bounds.include(step.robot.p, step.robot.r + 0.5);
    bounds.include(step.robot.goal, step.robot.r + 0.5);
    for (const HumanState& h : step.humans)
      bounds.include(h.p, h.r + social_margin + 0.5);
  }
  const Canvas canvas(bounds);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << fmt(canvas.width()) << "\" height=\"" << fmt(canvas.height())
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!log.steps.empty()) {
    const std::size_t n_humans = log.steps.front().humans.size();
    for (std::size_t i = 0; i < n_humans; ++i) {
      std::vector<Vec2> path;
      for (const EpisodeStep& step : log.steps) path.push_back(step.humans[i].p);
      draw_path(out, canvas, path, "#999999", 1.0);
    }
    std::vector<Vec2> robot_path;
    for (const EpisodeStep& step : log.steps) robot_path.push_back(step.robot.p);
    draw_path(out, canvas, robot_path, "#1f6fd0", 2.0);

    const EpisodeStep& last = log.steps.back();
    for (const HumanState& h : last.humans) {
      draw_circle(out, canvas, h.p, h.r + social_margin, "#cc8844", "none",
                  true);
      draw_circle(out, canvas, h.p, h.r, "#996633", "#e8c9a0");
    }
    draw_circle(out, canvas, last.robot.p, last.robot.r, "#1f6fd0", "#a9c9ef");
    draw_circle(out, canvas, last.robot.goal, 0.1, "#2a9d2a", "#2a9d2a");
    out << "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">"
        << outcome_name(log.outcome) << ", " << fmt(log.total_time)
        << " s</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace socnav::sim
