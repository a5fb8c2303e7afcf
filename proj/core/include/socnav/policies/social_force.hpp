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

struct SfParams {
  double relaxation_time = 0.5;      // tau
  double repulsion_strength = 2.0;   // A
  double repulsion_range = 0.3;      // B
  double body_coefficient = 0.0;     // optional contact term, off by default
};

/// Exponential repulsion A * exp((r_sum - d) / B) along the unit vector from
/// the neighbor to self, plus the optional linear contact term when
/// overlapping.
Vec2 sf_repulsion(const AgentView& self, const AgentView& other,
                  const SfParams& params);

/// (v_des - v) / tau + sum of repulsions, where v_des points at the goal
/// with speed min(v_pref, dist / dt).
Vec2 sf_acceleration(const AgentView& self, const Vec2& goal, double v_pref,
                     const std::vector<AgentView>& neighbors,
                     const SfParams& params, double dt);

/// Velocity after one dt of the acceleration, clipped to v_pref.
Vec2 sf_policy(const AgentView& self, const Vec2& goal, double v_pref,
               const std::vector<AgentView>& neighbors, const SfParams& params,
               double dt);

}  // namespace socnav::policies
