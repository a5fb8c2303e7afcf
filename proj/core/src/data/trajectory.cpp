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

#include "socnav/data/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include "socnav/error.hpp"

namespace socnav::data {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    std::size_t begin = 0;
    while (begin < field.size() && field[begin] == ' ') ++begin;
    fields.push_back(field.substr(begin));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw DataError("trajectory csv line " + std::to_string(line_no) +
                    ": bad number '" + text + "'");
  }
}

// Position at time t on the polyline through the raw samples.
Vec2 interpolate(const std::vector<TrajectoryRecord>& samples, double t) {
  std::size_t hi = 1;
  while (hi + 1 < samples.size() && samples[hi].t < t) ++hi;
  const TrajectoryRecord& a = samples[hi - 1];
  const TrajectoryRecord& b = samples[hi];
  const double span = b.t - a.t;
  const double w = span > 0.0 ? std::clamp((t - a.t) / span, 0.0, 1.0) : 0.0;
  return {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
}

void fill_velocities(std::vector<social::TrackState>& states, double dt) {
  const std::size_t n = states.size();
  if (n < 2) return;
  states.front().v = (states[1].p - states[0].p) / dt;
  states.back().v = (states[n - 1].p - states[n - 2].p) / dt;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    states[k].v = (states[k + 1].p - states[k - 1].p) / (2.0 * dt);
  }
}

}  // namespace

std::vector<TrajectoryRecord> parse_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("trajectory csv: empty input");

  const std::vector<std::string> header = split_csv_line(line);
  std::size_t col_id = header.size(), col_t = header.size();
  std::size_t col_x = header.size(), col_y = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "id") col_id = i;
    if (header[i] == "t") col_t = i;
    if (header[i] == "x") col_x = i;
    if (header[i] == "y") col_y = i;
  }
  if (col_id == header.size() || col_t == header.size() ||
      col_x == header.size() || col_y == header.size()) {
    throw DataError("trajectory csv: header must name id, t, x, y");
  }

  std::vector<TrajectoryRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() < header.size()) {
      throw DataError("trajectory csv line " + std::to_string(line_no) +
                      ": expected " + std::to_string(header.size()) +
                      " fields");
    }
    TrajectoryRecord rec;
    rec.agent_id = fields[col_id];
    rec.t = parse_number(fields[col_t], line_no);
    rec.x = parse_number(fields[col_x], line_no);
    rec.y = parse_number(fields[col_y], line_no);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TrackSegment> ingest_trajectories(
    const std::vector<TrajectoryRecord>& records, double dt) {
  if (dt <= 0.0) throw ConfigError("ingest_trajectories: dt must be positive");

  // Group by agent, keeping the first-seen order of agents.
  std::vector<std::string> order;
  std::map<std::string, std::vector<TrajectoryRecord>> by_agent;
  for (const TrajectoryRecord& rec : records) {
    auto [it, inserted] = by_agent.try_emplace(rec.agent_id);
    if (inserted) order.push_back(rec.agent_id);
    it->second.push_back(rec);
  }

  std::vector<TrackSegment> segments;
  for (const std::string& id : order) {
    const std::vector<TrajectoryRecord>& samples = by_agent[id];
    bool monotonic = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].t <= samples[i - 1].t) {
        monotonic = false;
        break;
      }
    }
    if (!monotonic) {
      std::fprintf(stderr,
                   "ingest_trajectories: agent '%s' has non-increasing "
                   "timestamps, skipping\n",
                   id.c_str());
      continue;
    }

    // Split the raw samples at gaps wider than 2 dt, then resample each
    // piece on its own grid.
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= samples.size(); ++i) {
      const bool gap =
          i < samples.size() && samples[i].t - samples[i - 1].t > 2.0 * dt;
      if (i < samples.size() && !gap) continue;

      const std::size_t end = i;
      if (end - begin >= 2) {
        std::vector<TrajectoryRecord> piece(samples.begin() + begin,
                                            samples.begin() + end);
        TrackSegment segment;
        segment.agent_id = id;
        segment.t0 = piece.front().t;
        const double t_last = piece.back().t;
        for (std::size_t k = 0;; ++k) {
          const double t = segment.t0 + static_cast<double>(k) * dt;
          if (t > t_last + 1e-9) break;
          segment.states.push_back({interpolate(piece, t), Vec2{}});
        }
        if (segment.states.size() >= 2) {
          fill_velocities(segment.states, dt);
          segments.push_back(std::move(segment));
        }
      }
      begin = end;
    }
  }
  return segments;
}

std::vector<TrackSegment> ingest_trajectories(std::istream& csv, double dt) {
  return ingest_trajectories(parse_trajectory_csv(csv), dt);
}

std::vector<social::Tracklet> segment_tracklets(
    const std::vector<social::TrackState>& states,
    const social::TrackletConfig& cfg, std::size_t stride) {
  if (stride == 0) throw ConfigError("segment_tracklets: stride must be >= 1");
  std::vector<social::Tracklet> tracklets;
  if (states.size() < cfg.u + 1) return tracklets;
  for (std::size_t current = cfg.u; current < states.size();
       current += stride) {
    const std::vector<social::TrackState> history(
        states.begin() + static_cast<std::ptrdiff_t>(current - cfg.u),
        states.begin() + static_cast<std::ptrdiff_t>(current));
    const auto tracklet =
        build_tracklet(history, states[current], states[current].v, cfg);
    if (tracklet) tracklets.push_back(*tracklet);
  }
  return tracklets;
}

}  // namespace socnav::data
