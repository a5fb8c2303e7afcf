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

#include "socnav/policies/orca.hpp"
#include "socnav/policies/social_force.hpp"
#include "socnav/sim/episode.hpp"

namespace socnav::policies {

/// Every human runs ORCA against all other agents, the robot included.
class OrcaCrowd : public sim::CrowdPolicy {
 public:
  explicit OrcaCrowd(const OrcaParams& params = {}) : params_(params) {}
  std::vector<Vec2> act(const sim::JointState& world) override;

 private:
  OrcaParams params_;
};

/// Every human runs the social force model against all other agents.
class SfCrowd : public sim::CrowdPolicy {
 public:
  explicit SfCrowd(const SfParams& params = {}, double dt = 0.25)
      : params_(params), dt_(dt) {}
  std::vector<Vec2> act(const sim::JointState& world) override;

 private:
  SfParams params_;
  double dt_;
};

/// Robot driven by plain ORCA; the no-social-awareness baseline driver.
class OrcaRobotPolicy : public sim::RobotPolicy {
 public:
  explicit OrcaRobotPolicy(const OrcaParams& params = {}) : params_(params) {}
  sim::Action act(const sim::JointState& world) override;

 private:
  OrcaParams params_;
};

}  // namespace socnav::policies
