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

#include "socnav/policies/social_force.hpp"

#include <algorithm>
#include <cmath>

namespace socnav::policies {

Vec2 sf_repulsion(const AgentView& self, const AgentView& other,
                  const SfParams& params) {
  const Vec2 offset = self.p - other.p;
  const double d = offset.norm();
  if (d <= 0.0) return {0.0, 0.0};  // coincident centers give no direction
  const Vec2 n = offset / d;
  const double r_sum = self.r + other.r;
  double magnitude = params.repulsion_strength *
                     std::exp((r_sum - d) / params.repulsion_range);
  if (params.body_coefficient > 0.0 && d < r_sum) {
    magnitude += params.body_coefficient * (r_sum - d);
  }
  return magnitude * n;
}

Vec2 sf_acceleration(const AgentView& self, const Vec2& goal, double v_pref,
                     const std::vector<AgentView>& neighbors,
                     const SfParams& params, double dt) {
  const Vec2 to_goal = goal - self.p;
  const double dist = to_goal.norm();
  const double desired_speed = std::min(v_pref, dist / dt);
  const Vec2 v_des = to_goal.normalized() * desired_speed;

  Vec2 accel = (v_des - self.v) / params.relaxation_time;
  for (const AgentView& other : neighbors) {
    accel += sf_repulsion(self, other, params);
  }
  return accel;
}

Vec2 sf_policy(const AgentView& self, const Vec2& goal, double v_pref,
               const std::vector<AgentView>& neighbors, const SfParams& params,
               double dt) {
  Vec2 v = self.v + sf_acceleration(self, goal, v_pref, neighbors, params, dt) * dt;
  const double speed = v.norm();
  if (speed > v_pref) v = v * (v_pref / speed);
  return v;
}

}  // namespace socnav::policies
