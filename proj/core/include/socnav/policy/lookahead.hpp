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

#include "socnav/policy/action_space.hpp"
#include "socnav/policy/reward.hpp"
#include "socnav/policy/value_net.hpp"
#include "socnav/sim/episode.hpp"

namespace socnav::policy {

/// Robot takes the action, humans keep their current velocities.
sim::JointState propagate(const sim::JointState& s, const sim::Action& a,
                          double dt);

/// Goal-aligned features for every human against the same robot state.
std::vector<sim::RobotHumanState> robot_centric_all(
    const sim::RobotState& robot, const std::vector<sim::HumanState>& humans,
    sim::FrameRef* frame = nullptr);

/// Per-step discount gamma^(dt * v_pref), which normalizes the horizon
/// across preferred speeds.
double step_discount(double gamma, double dt, double v_pref);

/// Lookahead score of one candidate: reward of the step (d_real extended by
/// the candidate's own path length) plus the discounted value of the
/// propagated state. Throws DataError when the result is not finite.
double action_value(const sim::JointState& s, const sim::Action& a,
                    const ValueNet& net, const RewardContext& ctx, double dt,
                    sim::FrameRef* frame = nullptr);

/// Argmax of action_value over the action space; ties go to the earliest
/// action in enumeration order. With no humans the network is bypassed and
/// the action whose outcome lands closest to the goal is returned.
sim::Action select_action(const sim::JointState& s, const ValueNet& net,
                          const ActionSpace& space, const RewardContext& ctx,
                          double dt, sim::FrameRef* frame = nullptr);

/// Deployable robot policy around select_action. Tracks the realized path
/// length and goal legs across the episode, and optionally explores
/// epsilon-greedily for training.
class ValuePolicy : public sim::RobotPolicy {
 public:
  ValuePolicy(const ValueNet* net, double d_c, double gamma, double dt);

  /// Uniform-random actions with probability epsilon.
  void set_exploration(double epsilon, Rng rng);

  sim::Action act(const sim::JointState& s) override;
  void reset() override;

 protected:
  /// Hook for the socially combined variant; the base runs select_action.
  virtual sim::Action choose(const sim::JointState& s,
                             const RewardContext& ctx);

  const ValueNet* net_;
  double dt_;
  sim::FrameRef frame_;
  ActionSpace space_;

 private:
  RewardContext base_;
  double space_v_pref_ = -1.0;
  double d_real_ = 0.0;
  Vec2 leg_goal_;
  Vec2 last_p_;
  bool mid_leg_ = false;
  double epsilon_ = 0.0;
  Rng explore_rng_{0};
};

}  // namespace socnav::policy
