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

#include <array>
#include <cstddef>
#include <vector>

#include "socnav/vec2.hpp"

namespace socnav::sim {

struct RobotState {
  Vec2 p;
  Vec2 v;
  double r = 0.3;
  Vec2 goal;
  double theta = 0.0;
  double v_pref = 1.0;
};

/// Position, velocity, and radius are what the robot can observe. The goal
/// (and the opposite ping-pong endpoint and preferred speed) drive the crowd
/// policy only.
struct HumanState {
  Vec2 p;
  Vec2 v;
  double r = 0.3;
  Vec2 goal;
  Vec2 home;
  double v_pref = 1.0;
};

struct JointState {
  RobotState robot;
  std::vector<HumanState> humans;
  double time = 0.0;
};

/// Holonomic command: the robot velocity becomes speed * (cos dir, sin dir)
/// instantaneously.
struct Action {
  double speed = 0.0;
  double direction = 0.0;

  Vec2 velocity() const {
    return {speed * std::cos(direction), speed * std::sin(direction)};
  }
};

/// Robot-plus-one-human state in the goal-aligned frame: the robot sits at
/// the origin and the x-axis points at its goal.
struct RobotHumanState {
  double d_g = 0.0;
  double v_pref = 0.0;
  double theta = 0.0;
  double r_r = 0.0;
  double v_x = 0.0, v_y = 0.0;        // robot velocity, rotated
  double h_px = 0.0, h_py = 0.0;      // human position relative to the robot
  double h_vx = 0.0, h_vy = 0.0;      // human velocity, rotated
  double r_h = 0.0;
  double d_i = 0.0;                   // center-to-center distance
  double r_sum = 0.0;

  static constexpr std::size_t kFeatureCount = 13;
  std::array<double, kFeatureCount> features() const {
    return {d_g, v_pref, theta, r_r, v_x, v_y, h_px,
            h_py, h_vx, h_vy, r_h,  d_i, r_sum};
  }
};

/// Remembers the last well-defined goal rotation so the transform stays
/// usable in the degenerate robot-on-goal case.
struct FrameRef {
  double phi = 0.0;
  bool valid = false;
};

RobotHumanState to_robot_centric(const RobotState& robot,
                                 const HumanState& human,
                                 FrameRef* frame = nullptr);

/// Advances every agent by its new velocity: the robot takes the action
/// vector, human i takes human_velocities[i]. Positions move by v * dt.
JointState step_world(const JointState& world, const Action& robot_action,
                      const std::vector<Vec2>& human_velocities, double dt);

/// Surface-to-surface distance to the nearest human; +inf with no humans,
/// negative iff overlapping.
double min_separation(const JointState& world);
double min_separation(const RobotState& robot,
                      const std::vector<HumanState>& humans);

/// True iff the robot center is strictly inside its own radius of the goal.
bool goal_reached(const RobotState& robot);

}  // namespace socnav::sim
