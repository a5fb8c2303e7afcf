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

#include "socnav/policy/lookahead.hpp"
#include "socnav/social/social_net.hpp"

namespace socnav::social {

struct CombinedPolicyConfig {
  double k_s = 0.6;  // weight of the social score
  bool sv_binarize = false;
  TrackletConfig tracklet;
};

/// Argmax over the action space of the lookahead score plus k_s times the
/// social score of the candidate tracklet (current history extended by the
/// action). With k_s = 0 or too little history the social term vanishes and
/// the choice equals policy::select_action exactly.
sim::Action combined_select_action(
    const sim::JointState& s, const policy::ValueNet& value_net,
    const SocialNet& social_net, const policy::ActionSpace& space,
    const policy::RewardContext& ctx, const CombinedPolicyConfig& cfg,
    const std::vector<TrackState>& history, double dt,
    sim::FrameRef* frame = nullptr);

/// Navigation policy with the social term: keeps the robot's recent states
/// and scores candidate tracklets through the social net. The social net is
/// read through a pointer, so an online learner may swap its weights
/// between decisions.
class CombinedPolicy : public policy::ValuePolicy {
 public:
  CombinedPolicy(const policy::ValueNet* value_net, const SocialNet* social_net,
                 const CombinedPolicyConfig& cfg, double d_c, double gamma,
                 double dt);

  sim::Action act(const sim::JointState& s) override;
  void reset() override;
  const std::vector<TrackState>& history() const { return history_; }

 protected:
  sim::Action choose(const sim::JointState& s,
                     const policy::RewardContext& ctx) override;

 private:
  const SocialNet* social_net_;
  CombinedPolicyConfig cfg_;
  std::vector<TrackState> history_;
};

}  // namespace socnav::social
