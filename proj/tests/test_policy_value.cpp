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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

#include "socnav/error.hpp"
#include "socnav/policy/action_space.hpp"
#include "socnav/policy/lookahead.hpp"
#include "socnav/policy/replay.hpp"
#include "socnav/policy/reward.hpp"
#include "socnav/policy/training.hpp"
#include "socnav/policy/value_net.hpp"
#include "socnav/rng.hpp"

using namespace socnav;
using namespace socnav::policy;

namespace {

sim::JointState basic_state(double goal_x = 8.0) {
  sim::JointState s;
  s.robot.p = {0.0, 0.0};
  s.robot.goal = {goal_x, 0.0};
  s.robot.v_pref = 1.0;
  return s;
}

sim::HumanState human_at(double x, double y, Vec2 v = {0.0, 0.0}) {
  sim::HumanState h;
  h.p = {x, y};
  h.v = v;
  h.goal = h.p;
  h.home = h.p;
  return h;
}

void zero_params(ValueNet& net) {
  for (nn::Tensor2* t : param_refs(net)) t->fill(0.0);
}

sim::JointState random_state(Rng& rng, std::size_t n_humans) {
  sim::JointState s;
  s.robot.p = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
  do {
    s.robot.goal = {rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
  } while ((s.robot.goal - s.robot.p).norm() < 1.0);
  s.robot.v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  s.robot.theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
  for (std::size_t i = 0; i < n_humans; ++i) {
    sim::HumanState h = human_at(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
    h.v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    s.humans.push_back(h);
  }
  return s;
}

std::vector<sim::RobotHumanState> random_features(Rng& rng, std::size_t n) {
  const sim::JointState s = random_state(rng, n);
  return robot_centric_all(s.robot, s.humans);
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Central-difference gradient of value_forward w.r.t. every parameter.
void check_value_gradients(ValueNet& net,
                           const std::vector<sim::RobotHumanState>& rh) {
  ValueCache cache;
  value_forward(net, rh, &cache);
  ValueGrads grads = zero_grads(net);
  value_backward(net, cache, 1.0, grads);

  const auto params = param_refs(net);
  const auto grad_ptrs = grad_refs(grads);
  REQUIRE(params.size() == grad_ptrs.size());
  const double step = 1e-5;
  for (std::size_t t = 0; t < params.size(); ++t) {
    for (std::size_t i = 0; i < params[t]->size(); ++i) {
      const double saved = params[t]->data[i];
      params[t]->data[i] = saved + step;
      const double up = value_forward(net, rh);
      params[t]->data[i] = saved - step;
      const double down = value_forward(net, rh);
      params[t]->data[i] = saved;
      const double fd = (up - down) / (2.0 * step);
      REQUIRE(rel_err(fd, grad_ptrs[t]->data[i]) < 1e-4);
    }
  }
}

// Independent re-coding of the one-step lookahead argmax.
sim::Action oracle_select(const sim::JointState& s, const ValueNet& net,
                          const ActionSpace& space, const RewardContext& ctx,
                          double dt) {
  sim::Action best = space.actions.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (const sim::Action& a : space.actions) {
    RewardContext c = ctx;
    c.d_real += a.speed * dt;
    const double r = reward(s, a, c, dt);

    sim::RobotState next_robot = s.robot;
    next_robot.v = a.velocity();
    next_robot.p += next_robot.v * dt;
    if (a.speed > 0.0) next_robot.theta = a.direction;
    std::vector<sim::RobotHumanState> rh;
    for (const sim::HumanState& h : s.humans) {
      sim::HumanState moved = h;
      moved.p += moved.v * dt;
      rh.push_back(sim::to_robot_centric(next_robot, moved));
    }
    const double value =
        r + std::pow(ctx.gamma, dt * s.robot.v_pref) * value_forward(net, rh);
    if (value > best_value) {
      best_value = value;
      best = a;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("action space is 5 speeds by 16 headings, speed-major") {
  const ActionSpace space = build_action_space(1.0);
  REQUIRE(space.actions.size() == 80);
  REQUIRE(space.speeds.size() == 5);
  REQUIRE(space.directions.size() == 16);

  CHECK(space.speeds.front() == 0.2);
  CHECK(space.speeds.back() == 1.0);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(space.speeds[i] > space.speeds[i - 1]);
  }
  CHECK(space.directions[0] == 0.0);
  CHECK(space.directions[8] == std::numbers::pi);

  for (std::size_t k = 0; k < 80; ++k) {
    CHECK(space.actions[k].speed == space.speeds[k / 16]);
    CHECK(space.actions[k].direction == space.directions[k % 16]);
    CHECK(space.actions[k].speed > 0.0);
    CHECK(space.actions[k].speed <= 1.0);
  }

  const ActionSpace scaled = build_action_space(1.4);
  CHECK(scaled.speeds.back() == 1.4);
  CHECK(scaled.actions.size() == 80);

  CHECK_THROWS_AS(build_action_space(0.0), ConfigError);
  CHECK_THROWS_AS(build_action_space(-1.0), ConfigError);
  CHECK_THROWS_AS(build_action_space(std::nan("")), ConfigError);
}

TEST_CASE("reward covers the four cases of the step reward") {
  RewardContext ctx;
  ctx.d_c = 0.2;
  ctx.d_plan = 8.0;
  ctx.d_real = 8.0;
  const sim::Action stop{0.0, 0.0};
  const double dt = 0.25;

  SUBCASE("overlap") {
    sim::JointState s = basic_state();
    s.humans.push_back(human_at(0.55, 0.0));
    CHECK(interval_min_separation(s, stop, dt) == doctest::Approx(-0.05));
    CHECK(reward(s, stop, ctx, dt) == -0.25);
  }

  SUBCASE("goal with straight-line path") {
    sim::JointState s = basic_state();
    s.robot.p = {7.8, 0.0};
    s.humans.push_back(human_at(-5.0, 0.0));
    const sim::Action a{0.8, 0.0};
    CHECK(reward(s, a, ctx, dt) == 1.0);
  }

  SUBCASE("goal after a detour") {
    sim::JointState s = basic_state();
    s.robot.p = {7.8, 0.0};
    RewardContext detour = ctx;
    detour.d_plan = 4.0;
    detour.d_real = 5.0;
    CHECK(reward(s, {0.8, 0.0}, detour, dt) == 0.8);
  }

  SUBCASE("discomfort") {
    sim::JointState s = basic_state();
    s.humans.push_back(human_at(0.7, 0.0));
    CHECK(reward(s, stop, ctx, dt) ==
          doctest::Approx(-0.05).epsilon(1e-12));
  }

  SUBCASE("free space") {
    sim::JointState s = basic_state();
    s.humans.push_back(human_at(0.9, 0.0));
    CHECK(reward(s, stop, ctx, dt) == 0.0);
    CHECK(reward(basic_state(), stop, ctx, dt) == 0.0);
  }
}

TEST_CASE("reward cases are exclusive and ordered") {
  RewardContext ctx;
  ctx.d_c = 0.2;
  ctx.d_plan = 2.0;
  ctx.d_real = 2.5;
  const double dt = 0.25;
  const double ratio = 0.8;

  const struct {
    double sep;
    double expected_free;  // goal not reached
    bool goal_beats_it;    // reward with the goal reached
  } rows[] = {
      {-0.1, -0.25, false},  // collision wins even on the goal
      {0.0, -0.1, true},
      {0.05, -0.075, true},
      {0.2, 0.0, true},
      {0.3, 0.0, true},
  };

  for (const auto& row : rows) {
    CAPTURE(row.sep);
    sim::JointState far = basic_state();
    far.humans.push_back(human_at(0.6 + row.sep, 0.0));
    CHECK(reward(far, {0.0, 0.0}, ctx, dt) ==
          doctest::Approx(row.expected_free).epsilon(1e-9));

    sim::JointState on_goal = far;
    on_goal.robot.goal = on_goal.robot.p;
    const double r = reward(on_goal, {0.0, 0.0}, ctx, dt);
    if (row.goal_beats_it) {
      CHECK(r == doctest::Approx(ratio));
    } else {
      CHECK(r == -0.25);
    }
  }
}

TEST_CASE("closest approach catches a pass-through between step endpoints") {
  sim::JointState s = basic_state();
  s.humans.push_back(human_at(0.25, -1.0, {0.0, 8.0}));
  const sim::Action a{1.0, 0.0};
  const double dt = 0.25;

  const double start_sep = (s.humans[0].p - s.robot.p).norm() - 0.6;
  const Vec2 robot_end = s.robot.p + a.velocity() * dt;
  const Vec2 human_end = s.humans[0].p + s.humans[0].v * dt;
  const double end_sep = (human_end - robot_end).norm() - 0.6;
  CHECK(start_sep > 0.0);
  CHECK(end_sep > 0.0);

  CHECK(interval_min_separation(s, a, dt) < 0.0);
  CHECK(reward(s, a, RewardContext{}, dt) == -0.25);
}

TEST_CASE("interval separation is +inf without humans") {
  CHECK(interval_min_separation(basic_state(), {1.0, 0.0}, 0.25) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("zero-weight value net outputs zero for any crowd") {
  Rng rng(20260601);
  ValueNet net = make_value_net(rng);
  zero_params(net);
  for (std::size_t n = 1; n <= 5; ++n) {
    Rng sub = rng.fork(n);
    CHECK(value_forward(net, random_features(sub, n)) == 0.0);
  }
}

TEST_CASE("value net is exactly permutation invariant") {
  Rng rng(20260602);
  ValueNet net = make_value_net(rng);
  auto rh = random_features(rng, 6);
  const double base = value_forward(net, rh);
  CHECK(std::isfinite(base));

  Rng perm_rng = rng.fork("perm");
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = rh;
    perm_rng.shuffle(shuffled);
    CHECK(value_forward(net, shuffled) == base);
  }

  auto one = random_features(rng, 1);
  auto two = one;
  two.push_back(one[0]);
  CHECK(std::isfinite(value_forward(net, two)));

  CHECK_THROWS_AS(value_forward(net, {}), ConfigError);
}

TEST_CASE("value net handles any crowd size") {
  Rng rng(20260603);
  ValueNet net = make_value_net(rng);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(std::isfinite(value_forward(net, random_features(rng, n))));
  }
}

TEST_CASE("value net gradients match finite differences") {
  Rng rng(20260604);
  ValueNet net = make_value_net(rng);
  check_value_gradients(net, random_features(rng, 3));

  Rng rng_single(20260605);
  ValueNet small = make_value_net(rng_single);
  check_value_gradients(small, random_features(rng_single, 1));
}

TEST_CASE("value net weights round-trip bit-exactly") {
  Rng rng(20260606);
  ValueNet net = make_value_net(rng);
  nn::RmsPropState opt = nn::make_rmsprop(param_refs(net), {});
  // Give the optimizer non-trivial state.
  auto rh = random_features(rng, 2);
  ValueCache cache;
  value_forward(net, rh, &cache);
  ValueGrads grads = zero_grads(net);
  value_backward(net, cache, 1.0, grads);
  nn::rmsprop_step(opt, param_refs(net), grad_refs(std::as_const(grads)));

  const std::string text = value_net_to_json_string(net, &opt);
  std::optional<nn::RmsPropState> opt2;
  const ValueNet back = value_net_from_json_string(text, &opt2);
  REQUIRE(opt2.has_value());

  const auto p1 = param_refs(net);
  const auto p2 = param_refs(back);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    REQUIRE(p1[i]->data == p2[i]->data);
  }
  REQUIRE(opt.mean_square.size() == opt2->mean_square.size());
  for (std::size_t i = 0; i < opt.mean_square.size(); ++i) {
    CHECK(opt.mean_square[i].data == opt2->mean_square[i].data);
  }
  CHECK(value_forward(back, rh) == value_forward(net, rh));

  CHECK_THROWS_AS(value_net_from_json_string("{}"), DataError);
  CHECK_THROWS_AS(value_net_from_json_string(
                      R"({"schema_version":1,"kind":"gru_mlp"})"),
                  DataError);
}

TEST_CASE("select_action picks the single goal-reaching action") {
  Rng rng(20260607);
  ValueNet net = make_value_net(rng);
  zero_params(net);

  sim::JointState s = basic_state(0.25);
  s.robot.r = 0.04;
  s.humans.push_back(human_at(50.0, 0.0));
  const ActionSpace space = build_action_space(1.0);
  RewardContext ctx;
  ctx.d_plan = 5.0;
  ctx.d_real = 4.75;

  const sim::Action a = select_action(s, net, space, ctx, 0.25);
  CHECK(a.speed == 1.0);
  CHECK(a.direction == 0.0);
}

TEST_CASE("select_action falls back to enumeration order on full ties") {
  Rng rng(20260608);
  ValueNet net = make_value_net(rng);
  zero_params(net);

  sim::JointState s = basic_state(8.0);
  s.humans.push_back(human_at(-50.0, 0.0));
  const ActionSpace space = build_action_space(1.0);

  const sim::Action a = select_action(s, net, space, RewardContext{}, 0.25);
  CHECK(a.speed == space.actions[0].speed);
  CHECK(a.direction == space.actions[0].direction);
}

TEST_CASE("select_action matches the brute-force oracle") {
  Rng rng(20260609);
  ValueNet net = make_value_net(rng);
  const ActionSpace space = build_action_space(1.0);
  RewardContext ctx;
  ctx.d_plan = 6.0;
  ctx.d_real = 3.0;

  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + sub.uniform_int(5);
    const sim::JointState s = random_state(sub, n);
    const sim::Action got = select_action(s, net, space, ctx, 0.25);
    const sim::Action want = oracle_select(s, net, space, ctx, 0.25);
    REQUIRE(got.speed == want.speed);
    REQUIRE(got.direction == want.direction);
  }
}

TEST_CASE("select_action heads for the goal when no humans are present") {
  Rng rng(20260610);
  ValueNet net = make_value_net(rng);
  const ActionSpace space = build_action_space(1.0);
  const sim::Action a =
      select_action(basic_state(8.0), net, space, RewardContext{}, 0.25);
  CHECK(a.speed == 1.0);
  CHECK(a.direction == 0.0);
}

TEST_CASE("select_action rejects non-finite values") {
  Rng rng(20260611);
  ValueNet net = make_value_net(rng);
  net.head.back().b(0, 0) = std::numeric_limits<double>::infinity();
  sim::JointState s = basic_state();
  s.humans.push_back(human_at(2.0, 0.0));
  CHECK_THROWS_AS(
      select_action(s, net, build_action_space(1.0), RewardContext{}, 0.25),
      DataError);
}

TEST_CASE("per-step discount follows gamma^(dt v_pref)") {
  CHECK(step_discount(0.9, 0.25, 1.0) ==
        doctest::Approx(std::pow(0.9, 0.25)).epsilon(1e-15));
  CHECK(step_discount(0.9, 0.25, 1.0) == doctest::Approx(0.9740).epsilon(1e-4));
  CHECK(step_discount(0.0, 0.25, 1.0) == 0.0);
  CHECK(step_discount(0.9, 0.0, 1.0) == 1.0);
}

TEST_CASE("replay buffer overwrites oldest entries first") {
  ReplayBuffer buf(3);
  CHECK(buf.capacity() == 3);
  for (int i = 1; i <= 3; ++i) buf.push({{}, static_cast<double>(i)});
  CHECK(buf.size() == 3);
  buf.push({{}, 4.0});
  CHECK(buf.size() == 3);
  CHECK(buf.at(0).target == 4.0);
  CHECK(buf.at(1).target == 2.0);
  CHECK(buf.at(2).target == 3.0);
  buf.push({{}, 5.0});
  CHECK(buf.at(1).target == 5.0);

  Rng rng(1);
  const auto idx = buf.sample_indices(rng, 16);
  CHECK(idx.size() == 16);
  for (std::size_t i : idx) CHECK(i < 3);

  CHECK_THROWS_AS(ReplayBuffer(0), ConfigError);
  ReplayBuffer empty(4);
  CHECK_THROWS_AS(empty.sample_indices(rng, 1), ConfigError);
}

namespace {

sim::EpisodeSetup crossing_scenario(std::uint64_t index) {
  sim::EpisodeSetup setup;
  setup.start.robot.p = {-3.0, 0.0};
  setup.start.robot.v_pref = 1.0;
  setup.course = {{3.0, 0.0}};
  Rng rng = Rng(991).fork(index);
  sim::HumanState h;
  const double y = rng.uniform(1.5, 2.5) * (index % 2 == 0 ? 1.0 : -1.0);
  h.p = {rng.uniform(-0.5, 0.5), y};
  h.goal = {h.p.x, -y};
  h.home = h.p;
  h.v_pref = rng.uniform(0.6, 1.0);
  setup.start.humans.push_back(h);
  return setup;
}

}  // namespace

TEST_CASE("episode transitions carry Eq-8 rewards and terminal flags") {
  sim::EpisodeSetup setup;
  setup.start.robot.p = {0.0, 0.0};
  setup.course = {{4.0, 0.0}};
  setup.start.humans.push_back(human_at(0.0, 50.0));

  struct Straight : sim::RobotPolicy {
    sim::Action act(const sim::JointState& s) override {
      const Vec2 to_goal = s.robot.goal - s.robot.p;
      const double speed = std::min(1.0, to_goal.norm() / 0.25);
      return {speed, to_goal.angle()};
    }
  } robot;
  struct Still : sim::CrowdPolicy {
    std::vector<Vec2> act(const sim::JointState& s) override {
      return std::vector<Vec2>(s.humans.size(), Vec2{});
    }
  } crowd;

  const sim::EpisodeLog log = sim::run_episode(setup, robot, crowd);
  REQUIRE(log.outcome == sim::EpisodeOutcome::kSuccess);
  const auto transitions = episode_transitions(setup, log, 0.2, 0.9, 0.25);
  REQUIRE(transitions.size() == log.steps.size());
  for (std::size_t i = 0; i + 1 < transitions.size(); ++i) {
    CHECK(transitions[i].reward == 0.0);
    CHECK_FALSE(transitions[i].terminal);
  }
  CHECK(transitions.back().terminal);
  // Straight path: the ratio reward is d_plan over the walked length.
  CHECK(transitions.back().reward ==
        doctest::Approx(4.0 / 3.75).epsilon(1e-9));
}

TEST_CASE("a collision transition is terminal with reward -0.25") {
  sim::EpisodeSetup setup;
  setup.start.robot.p = {0.0, 0.0};
  setup.course = {{4.0, 0.0}};
  setup.start.humans.push_back(human_at(1.5, 0.0));

  struct Ram : sim::RobotPolicy {
    sim::Action act(const sim::JointState&) override { return {1.0, 0.0}; }
  } robot;
  struct Still : sim::CrowdPolicy {
    std::vector<Vec2> act(const sim::JointState& s) override {
      return std::vector<Vec2>(s.humans.size(), Vec2{});
    }
  } crowd;

  const sim::EpisodeLog log = sim::run_episode(setup, robot, crowd);
  REQUIRE(log.outcome == sim::EpisodeOutcome::kCollision);
  const auto transitions = episode_transitions(setup, log, 0.2, 0.9, 0.25);
  REQUIRE_FALSE(transitions.empty());
  CHECK(transitions.back().terminal);
  CHECK(transitions.back().reward == -0.25);
}

TEST_CASE("imitation warm start with zero demonstrations is a no-op") {
  Rng rng(20260612);
  ValueNet net = make_value_net(rng);
  const ValueNet before = net;
  TrainConfig cfg;
  const TrainReport report = imitation_warmstart(net, crossing_scenario, 0, cfg);
  CHECK(report.episodes == 0);
  CHECK(report.updates == 0);

  const auto p1 = param_refs(before);
  const auto p2 = param_refs(net);
  for (std::size_t i = 0; i < p1.size(); ++i) REQUIRE(p1[i]->data == p2[i]->data);
}

TEST_CASE("imitation warm start is deterministic and orders states by goal distance") {
  TrainConfig cfg;
  cfg.seed = 7;
  cfg.warmstart_epochs = 5;

  Rng rng(20260613);
  ValueNet net_a = make_value_net(rng);
  ValueNet net_b = net_a;
  const TrainReport ra = imitation_warmstart(net_a, crossing_scenario, 25, cfg);
  const TrainReport rb = imitation_warmstart(net_b, crossing_scenario, 25, cfg);
  CHECK(ra.episodes == 25);
  CHECK(ra.updates == rb.updates);
  CHECK(ra.samples > 100);
  CHECK(net_finite(net_a));

  const auto pa = param_refs(net_a);
  const auto pb = param_refs(net_b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    REQUIRE(pa[i]->data == pb[i]->data);
  }

  // On average, a state one step from the goal is worth more than one
  // twenty steps out.
  Rng pair_rng(20260614);
  int near_wins = 0;
  for (int i = 0; i < 100; ++i) {
    sim::JointState near = basic_state(0.25);
    near.robot.p = {0.0, 0.0};
    near.humans.push_back(human_at(pair_rng.uniform(-3.0, 3.0),
                                   pair_rng.uniform(1.5, 3.0)));
    sim::JointState far = near;
    far.robot.goal = {5.0, 0.0};
    const double v_near =
        value_forward(net_a, robot_centric_all(near.robot, near.humans));
    const double v_far =
        value_forward(net_a, robot_centric_all(far.robot, far.humans));
    if (v_near > v_far) ++near_wins;
  }
  CHECK(near_wins > 50);
}

TEST_CASE("td training runs, stays finite, and is seed-deterministic") {
  TrainConfig cfg;
  cfg.episodes = 12;
  cfg.warmstart_epochs = 2;
  cfg.updates_per_episode = 2;
  cfg.target_sync = 5;
  cfg.seed = 11;

  Rng rng(20260615);
  ValueNet net_a = make_value_net(rng);
  imitation_warmstart(net_a, crossing_scenario, 5, cfg);
  ValueNet net_b = net_a;

  const TrainReport ra = td_train(net_a, crossing_scenario, cfg);
  const TrainReport rb = td_train(net_b, crossing_scenario, cfg);
  CHECK(ra.episodes == 12);
  CHECK(ra.updates > 0);
  CHECK(net_finite(net_a));
  CHECK(ra.successes + ra.collisions + ra.timeouts == ra.episodes);

  const auto pa = param_refs(net_a);
  const auto pb = param_refs(net_b);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    REQUIRE(pa[i]->data == pb[i]->data);
  }
}

TEST_CASE("td training aborts when the loss guard trips") {
  TrainConfig cfg;
  cfg.episodes = 6;
  cfg.loss_guard = 1e-12;
  Rng rng(20260616);
  ValueNet net = make_value_net(rng);
  CHECK_THROWS_AS(td_train(net, crossing_scenario, cfg), DataError);
}

TEST_CASE("value policy explores uniformly at epsilon 1") {
  Rng rng(20260617);
  ValueNet net = make_value_net(rng);
  ValuePolicy a(&net, 0.2, 0.9, 0.25);
  ValuePolicy b(&net, 0.2, 0.9, 0.25);
  a.set_exploration(1.0, Rng(42));
  b.set_exploration(1.0, Rng(42));

  sim::JointState s = basic_state();
  s.humans.push_back(human_at(2.0, 1.0));
  for (int i = 0; i < 10; ++i) {
    const sim::Action aa = a.act(s);
    const sim::Action ab = b.act(s);
    CHECK(aa.speed == ab.speed);
    CHECK(aa.direction == ab.direction);
  }
}
