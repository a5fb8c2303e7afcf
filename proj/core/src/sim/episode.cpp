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

#include "socnav/sim/episode.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "socnav/error.hpp"

namespace socnav::sim {

const char* outcome_name(EpisodeOutcome outcome) {
  switch (outcome) {
    case EpisodeOutcome::kSuccess:
      return "success";
    case EpisodeOutcome::kCollision:
      return "collision";
    case EpisodeOutcome::kTimeout:
      return "timeout";
    case EpisodeOutcome::kError:
      return "error";
  }
  return "unknown";
}

namespace {

bool action_valid(const Action& a, double v_pref) {
  return std::isfinite(a.speed) && std::isfinite(a.direction) &&
         a.speed >= 0.0 && a.speed <= v_pref + 1e-9;
}

EpisodeStep make_step(const JointState& world, const Action& action) {
  EpisodeStep step;
  step.t = world.time;
  step.robot = world.robot;
  step.action = action;
  step.humans = world.humans;
  step.d_min = min_separation(world);
  return step;
}

}  // namespace

EpisodeLog run_episode(const EpisodeSetup& setup, RobotPolicy& robot_policy,
                       CrowdPolicy& crowd_policy, const EpisodeHooks& hooks) {
  if (setup.course.empty())
    throw ConfigError("run_episode: course needs at least one goal");
  if (setup.dt <= 0.0 || setup.goal_budget <= 0.0)
    throw ConfigError("run_episode: dt and goal budget must be positive");

  JointState world = setup.start;
  world.robot.goal = setup.course.front();

  robot_policy.reset();
  crowd_policy.reset();

  EpisodeLog log;
  if (hooks.on_start) hooks.on_start(world);

  if (!world.humans.empty() && min_separation(world) < 0.0) {
    EpisodeStep step = make_step(world, Action{});
    step.event = "collision";
    log.steps.push_back(std::move(step));
    log.outcome = EpisodeOutcome::kCollision;
    log.total_time = 0.0;
    return log;
  }

  std::size_t goal_idx = 0;
  const double t0 = world.time;
  double leg_start = world.time;

  while (true) {
    const std::vector<Vec2> human_vels = crowd_policy.act(world);
    if (human_vels.size() != world.humans.size())
      throw ConfigError("run_episode: crowd policy returned wrong count");
    bool crowd_finite = true;
    for (const Vec2& v : human_vels) crowd_finite = crowd_finite && v.finite();

    const Action action = robot_policy.act(world);

    if (!crowd_finite || !action_valid(action, world.robot.v_pref)) {
      EpisodeStep step = make_step(world, action);
      step.event = "error";
      log.steps.push_back(std::move(step));
      log.outcome = EpisodeOutcome::kError;
      log.error_message = crowd_finite
                              ? "robot policy produced an invalid action"
                              : "crowd policy produced a non-finite velocity";
      break;
    }

    JointState next = step_world(world, action, human_vels, setup.dt);
    EpisodeStep step = make_step(next, action);

    bool done = false;
    if (step.d_min < 0.0) {
      step.event = "collision";
      log.outcome = EpisodeOutcome::kCollision;
      done = true;
    } else if (goal_reached(next.robot)) {
      log.leg_times.push_back(next.time - leg_start);
      ++log.goals_reached;
      if (goal_idx + 1 == setup.course.size()) {
        step.event = "success";
        log.outcome = EpisodeOutcome::kSuccess;
        done = true;
      } else {
        step.event = "goal";
        ++goal_idx;
        next.robot.goal = setup.course[goal_idx];
        step.robot.goal = next.robot.goal;
        leg_start = next.time;
      }
    } else if (next.time - leg_start >= setup.goal_budget - 1e-9) {
      step.event = "timeout";
      log.outcome = EpisodeOutcome::kTimeout;
      done = true;
    }

    if (!done) {
      for (HumanState& h : next.humans) {
        if ((h.p - h.goal).norm() < h.r) std::swap(h.goal, h.home);
      }
    }

    const StepContext ctx{world, action, next};
    if (hooks.on_step) hooks.on_step(ctx, step);
    log.steps.push_back(std::move(step));
    world = std::move(next);
    if (done) break;
  }

  log.total_time = world.time - t0;
  return log;
}

std::string episode_log_to_jsonl(const EpisodeLog& log) {
  std::ostringstream out;
  for (const EpisodeStep& step : log.steps) {
    nlohmann::json j;
    j["t"] = step.t;
    j["robot"] = {step.robot.p.x, step.robot.p.y, step.robot.v.x,
                  step.robot.v.y};
    j["action"] = {step.action.speed, step.action.direction};
    nlohmann::json humans = nlohmann::json::array();
    for (const HumanState& h : step.humans) {
      humans.push_back({h.p.x, h.p.y, h.v.x, h.v.y, h.r});
    }
    j["humans"] = std::move(humans);
    if (std::isfinite(step.d_min)) {
      j["d_min"] = step.d_min;
    } else {
      j["d_min"] = nullptr;
    }
    j["event"] = step.event;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace socnav::sim
