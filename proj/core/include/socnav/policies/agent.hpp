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

#include "socnav/sim/state.hpp"
#include "socnav/vec2.hpp"

namespace socnav::policies {

/// What one local planner sees of any agent: a moving disc.
struct AgentView {
  Vec2 p;
  Vec2 v;
  double r = 0.3;
};

inline AgentView view_of(const sim::RobotState& robot) {
  return {robot.p, robot.v, robot.r};
}

inline AgentView view_of(const sim::HumanState& human) {
  return {human.p, human.v, human.r};
}

}  // namespace socnav::policies
