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

#include "socnav/policy/training.hpp"

#include <algorithm>
#include <string>

#include "socnav/error.hpp"
#include "socnav/policies/crowd.hpp"

namespace socnav::policy {

namespace {

sim::JointState initial_state(const sim::EpisodeSetup& setup) {
  sim::JointState s = setup.start;
  if (!setup.course.empty()) s.robot.goal = setup.course.front();
  s.time = 0.0;
  return s;
}

void count_outcome(const sim::EpisodeLog& log, TrainReport& report) {
  switch (log.outcome) {
    case sim::EpisodeOutcome::kSuccess: ++report.successes; break;
    case sim::EpisodeOutcome::kCollision: ++report.collisions; break;
    case sim::EpisodeOutcome::kTimeout: ++report.timeouts; break;
    default: break;
  }
}

struct BatchResult {
  double loss = 0.0;
};

/// One RMSProp step on a minibatch of experiences; mean squared error.
BatchResult train_batch(ValueNet& net, nn::RmsPropState& opt,
                        const std::vector<const Experience*>& batch) {
  ValueGrads grads = zero_grads(net);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (const Experience* e : batch) {
    ValueCache cache;
    const double v = value_forward(net, e->state, &cache);
    const double err = v - e->target;
    loss += err * err * inv_n;
    value_backward(net, cache, 2.0 * err * inv_n, grads);
  }
  const auto params = param_refs(net);
  const auto grad_ptrs = grad_refs(static_cast<const ValueGrads&>(grads));
  nn::rmsprop_step(opt, params, grad_ptrs);
  return {loss};
}

void check_loss(double loss, double guard) {
  if (!(loss <= guard)) {
    throw DataError("value training diverged: loss " + std::to_string(loss));
  }
}

}  // namespace

std::vector<Transition> episode_transitions(const sim::EpisodeSetup& setup,
                                            const sim::EpisodeLog& log,
                                            double d_c, double gamma,
                                            double dt) {
  std::vector<Transition> out;
  out.reserve(log.steps.size());

  sim::JointState before = initial_state(setup);
  sim::FrameRef frame;
  RewardContext ctx;
  ctx.d_c = d_c;
  ctx.gamma = gamma;
  Vec2 leg_goal = before.robot.goal;
  double d_plan = std::max((before.robot.p - leg_goal).norm(), 1e-9);
  double d_real = 0.0;

  for (const sim::EpisodeStep& step : log.steps) {
    if (step.event.starts_with("error")) break;
    if (before.robot.goal.x != leg_goal.x || before.robot.goal.y != leg_goal.y) {
      leg_goal = before.robot.goal;
      d_plan = std::max((before.robot.p - leg_goal).norm(), 1e-9);
      d_real = 0.0;
    }
    d_real += step.action.speed * dt;
    ctx.d_plan = d_plan;
    ctx.d_real = d_real;

    Transition tr;
    tr.state = robot_centric_all(before.robot, before.humans, &frame);
    tr.reward = reward(before, step.action, ctx, dt);
    tr.terminal = step.event.starts_with("collision") ||
                  step.event.starts_with("goal") ||
                  step.event.starts_with("success");

    sim::JointState after;
    after.robot = step.robot;
    after.humans = step.humans;
    after.time = step.t;
    tr.next_state = robot_centric_all(after.robot, after.humans, &frame);
    out.push_back(std::move(tr));
    before = after;
  }
  return out;
}

TrainReport imitation_warmstart(ValueNet& net, const ScenarioSource& scenarios,
                                std::size_t episode_count,
                                const TrainConfig& cfg) {
  TrainReport report;
  std::vector<Experience> dataset;

  policies::OrcaRobotPolicy robot;
  policies::OrcaCrowd crowd;
  for (std::size_t ep = 0; ep < episode_count; ++ep) {
    const sim::EpisodeSetup setup = scenarios(ep);
    const sim::EpisodeLog log = sim::run_episode(setup, robot, crowd);
    ++report.episodes;
    count_outcome(log, report);

    const double disc =
        step_discount(cfg.gamma, setup.dt, setup.start.robot.v_pref);
    const auto transitions =
        episode_transitions(setup, log, cfg.d_c, cfg.gamma, setup.dt);
    double g = 0.0;
    std::vector<Experience> episode_data;
    for (std::size_t i = transitions.size(); i-- > 0;) {
      const Transition& tr = transitions[i];
      g = tr.terminal ? tr.reward : tr.reward + disc * g;
      if (!tr.state.empty()) episode_data.push_back({tr.state, g});
    }
    dataset.insert(dataset.end(), episode_data.begin(), episode_data.end());
  }
  report.samples = dataset.size();
  if (dataset.empty()) return report;

  Rng rng = Rng(cfg.seed).fork("warmstart");
  nn::RmsPropState opt =
      nn::make_rmsprop(param_refs(net), {cfg.lr, 0.9, 1e-8});
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < cfg.warmstart_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
      const std::size_t end = std::min(start + cfg.batch, order.size());
      std::vector<const Experience*> batch;
      batch.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(&dataset[order[i]]);
      }
      const BatchResult res = train_batch(net, opt, batch);
      check_loss(res.loss, cfg.loss_guard);
      report.final_loss = res.loss;
      ++report.updates;
    }
  }
  return report;
}

TrainReport td_train(ValueNet& net, const ScenarioSource& scenarios,
                     const TrainConfig& cfg) {
  TrainReport report;
  Rng rng(cfg.seed);
  Rng sample_rng = rng.fork("replay");
  ReplayBuffer replay(cfg.replay_capacity);
  ValueNet target = net;
  nn::RmsPropState opt =
      nn::make_rmsprop(param_refs(net), {cfg.lr, 0.9, 1e-8});

  ValuePolicy policy(&net, cfg.d_c, cfg.gamma, cfg.dt);
  policies::OrcaCrowd crowd;

  const std::size_t half = std::max<std::size_t>(cfg.episodes / 2, 1);
  for (std::size_t ep = 0; ep < cfg.episodes; ++ep) {
    const double frac =
        std::min(static_cast<double>(ep) / static_cast<double>(half), 1.0);
    const double eps = cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;
    policy.set_exploration(eps, rng.fork("explore").fork(ep));

    sim::EpisodeSetup setup = scenarios(ep);
    setup.dt = cfg.dt;
    const sim::EpisodeLog log = sim::run_episode(setup, policy, crowd);
    ++report.episodes;
    count_outcome(log, report);

    const double disc =
        step_discount(cfg.gamma, cfg.dt, setup.start.robot.v_pref);
    for (const Transition& tr :
         episode_transitions(setup, log, cfg.d_c, cfg.gamma, cfg.dt)) {
      if (tr.state.empty()) continue;
      double y = tr.reward;
      if (!tr.terminal && !tr.next_state.empty()) {
        y += disc * value_forward(target, tr.next_state);
      }
      replay.push({tr.state, y});
    }
    report.samples = replay.size();

    if (replay.size() >= cfg.batch) {
      for (std::size_t u = 0; u < cfg.updates_per_episode; ++u) {
        const auto indices = replay.sample_indices(sample_rng, cfg.batch);
        std::vector<const Experience*> batch;
        batch.reserve(indices.size());
        for (std::size_t i : indices) batch.push_back(&replay.at(i));
        const BatchResult res = train_batch(net, opt, batch);
        check_loss(res.loss, cfg.loss_guard);
        report.final_loss = res.loss;
        ++report.updates;
      }
    }
    if ((ep + 1) % cfg.target_sync == 0) target = net;
  }
  return report;
}

}  // namespace socnav::policy
