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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "socnav/social/tracklet.hpp"

namespace socnav::data {

/// One raw trajectory sample of a recorded agent.
struct TrajectoryRecord {
  std::string agent_id;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// CSV with a header naming at least id, t, x, y (any column order, extra
/// columns ignored). Throws DataError on a missing header column or an
/// unparsable field.
std::vector<TrajectoryRecord> parse_trajectory_csv(std::istream& in);

/// One contiguous resampled piece of an agent's recording.
struct TrackSegment {
  std::string agent_id;
  double t0 = 0.0;
  std::vector<social::TrackState> states;  // on the dt grid
};

/// Resamples every agent onto the dt grid by linear interpolation.
/// Recording gaps wider than 2 dt split an agent into separate segments, and
/// segments shorter than two grid points are dropped. Velocities come from
/// central differences (one-sided at the ends). Agents with non-increasing
/// timestamps are skipped with a warning on stderr.
std::vector<TrackSegment> ingest_trajectories(
    const std::vector<TrajectoryRecord>& records, double dt);
std::vector<TrackSegment> ingest_trajectories(std::istream& csv, double dt);

/// Sliding tracklet windows over a state sequence: each window takes cfg.u
/// past states plus the current one and extrapolates the current velocity.
/// Windows start every `stride` samples.
std::vector<social::Tracklet> segment_tracklets(
    const std::vector<social::TrackState>& states,
    const social::TrackletConfig& cfg, std::size_t stride = 1);

}  // namespace socnav::data
