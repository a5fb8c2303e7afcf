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

#include "socnav/policies/crowd.hpp"

#include <algorithm>

namespace socnav::policies {

namespace {

std::vector<AgentView> others_of(const sim::JointState& world,
                                 std::size_t human_index) {
  std::vector<AgentView> views;
  views.reserve(world.humans.size());
  for (std::size_t j = 0; j < world.humans.size(); ++j) {
    if (j == human_index) continue;
    views.push_back(view_of(world.humans[j]));
  }
  views.push_back(view_of(world.robot));
  return views;
}

}  // namespace

std::vector<Vec2> OrcaCrowd::act(const sim::JointState& world) {
  std::vector<Vec2> velocities;
  velocities.reserve(world.humans.size());
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    const sim::HumanState& h = world.humans[i];
    velocities.push_back(orca_policy(view_of(h), h.goal, h.v_pref,
                                     others_of(world, i), params_));
  }
  return velocities;
}

std::vector<Vec2> SfCrowd::act(const sim::JointState& world) {
  std::vector<Vec2> velocities;
  velocities.reserve(world.humans.size());
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    const sim::HumanState& h = world.humans[i];
    velocities.push_back(sf_policy(view_of(h), h.goal, h.v_pref,
                                   others_of(world, i), params_, dt_));
  }
  return velocities;
}

sim::Action OrcaRobotPolicy::act(const sim::JointState& world) {
  std::vector<AgentView> views;
  views.reserve(world.humans.size());
  for (const sim::HumanState& h : world.humans) views.push_back(view_of(h));

  const Vec2 v = orca_policy(view_of(world.robot), world.robot.goal,
                             world.robot.v_pref, views, params_);
  sim::Action action;
  action.speed = std::min(v.norm(), world.robot.v_pref);
  action.direction = v.angle();
  return action;
}

}  // namespace socnav::policies
