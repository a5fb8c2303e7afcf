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

namespace socnav::policy {

/// Inputs of the step reward beyond the states themselves. d_plan is the
/// straight-line start-to-goal distance of the current goal leg; d_real is
/// the realized path length of that leg INCLUDING the step being scored
/// (callers add speed * dt before scoring a candidate action). Requires
/// d_plan > 0 and d_c > 0.
struct RewardContext {
  double d_c = 0.2;
  double d_plan = 1.0;
  double d_real = 1.0;
  double gamma = 0.9;
};

/// Closest surface-to-surface separation between the robot, moving at the
/// action velocity, and any human, moving at its current velocity, over the
/// interval [0, dt]. +inf with no humans; negative iff they overlap at the
/// closest approach.
double interval_min_separation(const sim::JointState& s, const sim::Action& a,
                               double dt);

/// Step reward, evaluated on the closest approach over [0, dt] and the
/// post-step robot position. Cases, first match wins:
///   separation < 0            -> -0.25
///   goal reached              -> d_plan / d_real
///   separation < d_c          -> -0.1 + separation / 2
///   otherwise                 -> 0
double reward(const sim::JointState& s, const sim::Action& a,
              const RewardContext& ctx, double dt);

}  // namespace socnav::policy
