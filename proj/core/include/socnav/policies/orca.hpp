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

#include <vector>

#include "socnav/policies/agent.hpp"
#include "socnav/vec2.hpp"

namespace socnav::policies {

struct OrcaParams {
  double time_horizon = 5.0;
  double neighbor_dist = 10.0;
  std::size_t max_neighbors = 10;
  double max_speed = 1.0;
  double time_step = 0.25;
  // Extra clearance added to the combined radius inside the velocity
  // obstacles. Dense crossings drive the LP infeasible, and the minimax
  // fallback then concedes a few millimetres per step; the pad absorbs that.
  double safety_space = 0.0;
};

/// Directed boundary line of a half-plane of admissible velocities. A
/// velocity v is feasible iff det(direction, point - v) <= 0, i.e. v lies on
/// the left of the line.
struct HalfPlane {
  Vec2 point;
  Vec2 direction;
};

/// Signed constraint violation: positive iff v is outside the half-plane.
inline double halfplane_violation(const HalfPlane& h, const Vec2& v) {
  return h.direction.det(h.point - v);
}

/// One velocity-obstacle half-plane per considered neighbor (nearest first,
/// within neighbor_dist, at most max_neighbors), each taking half the
/// avoidance responsibility. Overlapping pairs produce a time_step-scale
/// separation constraint instead.
std::vector<HalfPlane> orca_halfplanes(const AgentView& self,
                                       const std::vector<AgentView>& neighbors,
                                       const OrcaParams& params);

/// Feasible velocity (all half-planes, norm <= max_speed) closest to
/// preferred. When the constraints exclude the whole disc, falls back to the
/// velocity minimizing the largest violation.
Vec2 solve_velocity_lp(const std::vector<HalfPlane>& halfplanes,
                       const Vec2& preferred, double max_speed);

/// Preferred velocity is unit(goal - p) * min(v_pref, dist / time_step),
/// nudged by +1e-3 rad when neighbors are present so exactly symmetric
/// encounters cannot deadlock; the LP then resolves it against the
/// half-planes with speed limit v_pref.
Vec2 orca_policy(const AgentView& self, const Vec2& goal, double v_pref,
                 const std::vector<AgentView>& neighbors,
                 const OrcaParams& params);

}  // namespace socnav::policies
