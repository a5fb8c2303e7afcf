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

#include "socnav/social/combined.hpp"

#include <limits>

#include "socnav/error.hpp"

namespace socnav::social {

sim::Action combined_select_action(
    const sim::JointState& s, const policy::ValueNet& value_net,
    const SocialNet& social_net, const policy::ActionSpace& space,
    const policy::RewardContext& ctx, const CombinedPolicyConfig& cfg,
    const std::vector<TrackState>& history, double dt, sim::FrameRef* frame) {
  // With no social weight, no humans, or not enough history for a tracklet
  // the social term contributes nothing; fall through to the plain argmax.
  if (cfg.k_s == 0.0 || s.humans.empty() || history.size() < cfg.tracklet.u) {
    return policy::select_action(s, value_net, space, ctx, dt, frame);
  }
  if (space.actions.empty()) {
    throw ConfigError("combined_select_action: empty action space");
  }

  const TrackState current{s.robot.p, s.robot.v};
  std::vector<Tracklet> candidates;
  candidates.reserve(space.actions.size());
  for (const sim::Action& a : space.actions) {
    candidates.push_back(
        *build_tracklet(history, current, a.velocity(), cfg.tracklet));
  }
  Vec2 fallback = s.robot.goal - s.robot.p;
  if (fallback.norm() < 1e-12) fallback = {1.0, 0.0};
  const std::vector<double> sv =
      social_values(social_net, candidates, cfg.tracklet, fallback);

  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.actions.size(); ++i) {
    const double social =
        cfg.sv_binarize ? static_cast<double>(classify(sv[i])) : sv[i];
    const double score =
        policy::action_value(s, space.actions[i], value_net, ctx, dt, frame) +
        cfg.k_s * social;
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return space.actions[best];
}

CombinedPolicy::CombinedPolicy(const policy::ValueNet* value_net,
                               const SocialNet* social_net,
                               const CombinedPolicyConfig& cfg, double d_c,
                               double gamma, double dt)
    : policy::ValuePolicy(value_net, d_c, gamma, dt),
      social_net_(social_net),
      cfg_(cfg) {
  cfg_.tracklet.dt = dt;
}

sim::Action CombinedPolicy::act(const sim::JointState& s) {
  const sim::Action a = policy::ValuePolicy::act(s);
  history_.push_back({s.robot.p, s.robot.v});
  if (history_.size() > cfg_.tracklet.u) {
    history_.erase(history_.begin());
  }
  return a;
}

void CombinedPolicy::reset() {
  policy::ValuePolicy::reset();
  history_.clear();
}

sim::Action CombinedPolicy::choose(const sim::JointState& s,
                                   const policy::RewardContext& ctx) {
  return combined_select_action(s, *net_, *social_net_, space_, ctx, cfg_,
                                history_, dt_, &frame_);
}

}  // namespace socnav::social
