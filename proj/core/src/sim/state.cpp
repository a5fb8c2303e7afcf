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

#include "socnav/sim/state.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "socnav/error.hpp"

namespace socnav::sim {

namespace {

double wrap_angle(double a) {
  while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  while (a < -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

RobotHumanState to_robot_centric(const RobotState& robot,
                                 const HumanState& human, FrameRef* frame) {
  const Vec2 to_goal = robot.goal - robot.p;
  double phi;
  if (to_goal.norm() > 1e-9) {
    phi = to_goal.angle();
    if (frame != nullptr) {
      frame->phi = phi;
      frame->valid = true;
    }
  } else if (frame != nullptr && frame->valid) {
    phi = frame->phi;
  } else {
    phi = 0.0;
  }

  RobotHumanState rh;
  rh.d_g = to_goal.norm();
  rh.v_pref = robot.v_pref;
  rh.theta = wrap_angle(robot.theta - phi);
  rh.r_r = robot.r;

  const Vec2 rv = robot.v.rotated(-phi);
  rh.v_x = rv.x;
  rh.v_y = rv.y;

  const Vec2 rel = (human.p - robot.p).rotated(-phi);
  rh.h_px = rel.x;
  rh.h_py = rel.y;
  const Vec2 hv = human.v.rotated(-phi);
  rh.h_vx = hv.x;
  rh.h_vy = hv.y;

  rh.r_h = human.r;
  rh.d_i = (human.p - robot.p).norm();
  rh.r_sum = robot.r + human.r;
  return rh;
}

JointState step_world(const JointState& world, const Action& robot_action,
                      const std::vector<Vec2>& human_velocities, double dt) {
  if (dt <= 0.0) throw ConfigError("step_world: dt must be positive");
  if (human_velocities.size() != world.humans.size())
    throw ConfigError("step_world: one velocity per human required");

  JointState next = world;
  next.robot.v = robot_action.velocity();
  next.robot.p += next.robot.v * dt;
  if (robot_action.speed > 0.0) next.robot.theta = robot_action.direction;

  for (std::size_t i = 0; i < next.humans.size(); ++i) {
    next.humans[i].v = human_velocities[i];
    next.humans[i].p += next.humans[i].v * dt;
  }
  next.time += dt;
  return next;
}

double min_separation(const RobotState& robot,
                      const std::vector<HumanState>& humans) {
  double d_min = std::numeric_limits<double>::infinity();
  for (const HumanState& h : humans) {
    const double d = (h.p - robot.p).norm() - (robot.r + h.r);
    if (d < d_min) d_min = d;
  }
  return d_min;
}

double min_separation(const JointState& world) {
  return min_separation(world.robot, world.humans);
}

bool goal_reached(const RobotState& robot) {
  return (robot.p - robot.goal).norm() < robot.r;
}

}  // namespace socnav::sim
