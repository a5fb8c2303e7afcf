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

#include "socnav/policy/lookahead.hpp"

#include <cmath>
#include <limits>

#include "socnav/error.hpp"

namespace socnav::policy {

sim::JointState propagate(const sim::JointState& s, const sim::Action& a,
                          double dt) {
  std::vector<Vec2> human_velocities;
  human_velocities.reserve(s.humans.size());
  for (const sim::HumanState& h : s.humans) human_velocities.push_back(h.v);
  return sim::step_world(s, a, human_velocities, dt);
}

std::vector<sim::RobotHumanState> robot_centric_all(
    const sim::RobotState& robot, const std::vector<sim::HumanState>& humans,
    sim::FrameRef* frame) {
  std::vector<sim::RobotHumanState> out;
  out.reserve(humans.size());
  for (const sim::HumanState& h : humans) {
    out.push_back(sim::to_robot_centric(robot, h, frame));
  }
  return out;
}

double step_discount(double gamma, double dt, double v_pref) {
  return std::pow(gamma, dt * v_pref);
}

double action_value(const sim::JointState& s, const sim::Action& a,
                    const ValueNet& net, const RewardContext& ctx, double dt,
                    sim::FrameRef* frame) {
  RewardContext step_ctx = ctx;
  step_ctx.d_real += a.speed * dt;
  const double r = reward(s, a, step_ctx, dt);

  const sim::JointState next = propagate(s, a, dt);
  const double v =
      value_forward(net, robot_centric_all(next.robot, next.humans, frame));
  const double total =
      r + step_discount(ctx.gamma, dt, s.robot.v_pref) * v;
  if (!std::isfinite(total)) {
    throw DataError("action_value: non-finite lookahead value");
  }
  return total;
}

sim::Action select_action(const sim::JointState& s, const ValueNet& net,
                          const ActionSpace& space, const RewardContext& ctx,
                          double dt, sim::FrameRef* frame) {
  if (space.actions.empty()) {
    throw ConfigError("select_action: empty action space");
  }
  if (s.humans.empty()) {
    // Nothing to value; pick whatever lands closest to the goal.
    sim::Action best = space.actions.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (const sim::Action& a : space.actions) {
      const double d = (s.robot.p + a.velocity() * dt - s.robot.goal).norm();
      if (d < best_dist) {
        best_dist = d;
        best = a;
      }
    }
    return best;
  }

  sim::Action best = space.actions.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (const sim::Action& a : space.actions) {
    const double value = action_value(s, a, net, ctx, dt, frame);
    if (value > best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

ValuePolicy::ValuePolicy(const ValueNet* net, double d_c, double gamma,
                         double dt)
    : net_(net), dt_(dt) {
  base_.d_c = d_c;
  base_.gamma = gamma;
}

void ValuePolicy::set_exploration(double epsilon, Rng rng) {
  epsilon_ = epsilon;
  explore_rng_ = rng;
}

sim::Action ValuePolicy::act(const sim::JointState& s) {
  if (space_v_pref_ != s.robot.v_pref) {
    space_ = build_action_space(s.robot.v_pref);
    space_v_pref_ = s.robot.v_pref;
  }

  const bool new_leg = !mid_leg_ || s.robot.goal.x != leg_goal_.x ||
                       s.robot.goal.y != leg_goal_.y;
  if (new_leg) {
    leg_goal_ = s.robot.goal;
    base_.d_plan = std::max((s.robot.p - s.robot.goal).norm(), 1e-9);
    d_real_ = 0.0;
    mid_leg_ = true;
  } else {
    d_real_ += (s.robot.p - last_p_).norm();
  }
  last_p_ = s.robot.p;

  RewardContext ctx = base_;
  ctx.d_real = d_real_;

  if (epsilon_ > 0.0 && explore_rng_.uniform() < epsilon_) {
    const std::size_t i = explore_rng_.uniform_int(space_.actions.size());
    return space_.actions[i];
  }
  return choose(s, ctx);
}

void ValuePolicy::reset() {
  mid_leg_ = false;
  d_real_ = 0.0;
  frame_ = sim::FrameRef{};
}

sim::Action ValuePolicy::choose(const sim::JointState& s,
                                const RewardContext& ctx) {
  return select_action(s, *net_, space_, ctx, dt_, &frame_);
}

}  // namespace socnav::policy
