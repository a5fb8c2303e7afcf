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

#include "socnav/policy/reward.hpp"

#include <algorithm>
#include <limits>

namespace socnav::policy {

double interval_min_separation(const sim::JointState& s, const sim::Action& a,
                               double dt) {
  const Vec2 robot_v = a.velocity();
  double closest = std::numeric_limits<double>::infinity();
  for (const sim::HumanState& h : s.humans) {
    const Vec2 dp = h.p - s.robot.p;
    const Vec2 dv = h.v - robot_v;
    double t_star = 0.0;
    const double dv_sq = dv.norm_sq();
    if (dv_sq > 0.0) t_star = std::clamp(-dp.dot(dv) / dv_sq, 0.0, dt);
    const double d = (dp + dv * t_star).norm() - (s.robot.r + h.r);
    closest = std::min(closest, d);
  }
  return closest;
}

double reward(const sim::JointState& s, const sim::Action& a,
              const RewardContext& ctx, double dt) {
  const double d_min = interval_min_separation(s, a, dt);
  if (d_min < 0.0) return -0.25;

  sim::RobotState next = s.robot;
  next.p += a.velocity() * dt;
  if (sim::goal_reached(next)) return ctx.d_plan / ctx.d_real;

  if (d_min < ctx.d_c) return -0.1 + d_min / 2.0;
  return 0.0;
}

}  // namespace socnav::policy
