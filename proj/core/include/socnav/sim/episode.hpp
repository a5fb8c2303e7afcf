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

#include <functional>
#include <string>
#include <vector>

#include "socnav/sim/state.hpp"

namespace socnav::sim {

class RobotPolicy {
 public:
  virtual ~RobotPolicy() = default;
  virtual Action act(const JointState& world) = 0;
  virtual void reset() {}
};

/// Controls every human at once; returns one velocity per human in list
/// order.
class CrowdPolicy {
 public:
  virtual ~CrowdPolicy() = default;
  virtual std::vector<Vec2> act(const JointState& world) = 0;
  virtual void reset() {}
};

enum class EpisodeOutcome { kSuccess, kCollision, kTimeout, kError };
const char* outcome_name(EpisodeOutcome outcome);

struct EpisodeStep {
  double t = 0.0;  // world time after the step
  RobotState robot;
  Action action;
  std::vector<HumanState> humans;
  double d_min = 0.0;
  std::string event;  // "", "goal", "success", "collision", "timeout", "error"
};

struct StepContext {
  const JointState& before;
  const Action& action;
  const JointState& after;
};

/// Hooks own their state; one hook set serves one episode at a time. on_step
/// may append notes to the step event (separated by '+').
struct EpisodeHooks {
  std::function<void(const JointState&)> on_start;
  std::function<void(const StepContext&, EpisodeStep&)> on_step;
};

struct EpisodeSetup {
  JointState start;
  std::vector<Vec2> course;  // goal sequence; overrides start.robot.goal
  double dt = 0.25;
  double goal_budget = 25.0;  // seconds granted per goal, no carry-over
};

struct EpisodeLog {
  EpisodeOutcome outcome = EpisodeOutcome::kError;
  double total_time = 0.0;
  std::vector<double> leg_times;  // completed legs only
  std::size_t goals_reached = 0;
  std::vector<EpisodeStep> steps;
  std::string error_message;
};

/// Runs the decision loop at dt: crowd velocities, robot action, world step,
/// hooks. Terminates on collision, per-goal timeout, course completion, or a
/// non-finite/over-speed robot action (error). Humans that arrive at their
/// goal turn around toward the opposite endpoint.
EpisodeLog run_episode(const EpisodeSetup& setup, RobotPolicy& robot_policy,
                       CrowdPolicy& crowd_policy,
                       const EpisodeHooks& hooks = {});

/// One JSON record per step:
/// {t, robot:[px,py,vx,vy], action:[speed,dir], humans:[[px,py,vx,vy,r],..],
///  d_min, event}.
std::string episode_log_to_jsonl(const EpisodeLog& log);

}  // namespace socnav::sim
