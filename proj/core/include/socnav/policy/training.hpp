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

#include <cstdint>
#include <functional>
#include <vector>

#include "socnav/policy/lookahead.hpp"
#include "socnav/policy/replay.hpp"
#include "socnav/sim/episode.hpp"

namespace socnav::policy {

struct TrainConfig {
  std::size_t episodes = 300;
  std::size_t warmstart_epochs = 10;
  double lr = 0.001;
  double gamma = 0.9;
  double d_c = 0.2;
  double dt = 0.25;
  double eps_start = 0.5;  // decays linearly to eps_end over the first half
  double eps_end = 0.1;
  std::size_t target_sync = 50;  // episodes between target-net copies
  std::size_t replay_capacity = 20000;
  std::size_t batch = 32;
  std::size_t updates_per_episode = 8;
  double loss_guard = 1e3;  // abort when a batch loss exceeds this
  std::uint64_t seed = 0;
};

struct TrainReport {
  std::size_t episodes = 0;
  std::size_t updates = 0;
  std::size_t samples = 0;
  double final_loss = 0.0;
  std::size_t successes = 0;
  std::size_t collisions = 0;
  std::size_t timeouts = 0;
};

/// Produces the starting world for the given episode index.
using ScenarioSource = std::function<sim::EpisodeSetup(std::uint64_t)>;

/// One value-learning step reconstructed from an episode log: the state the
/// action was taken in, its reward, and the successor. Goal and collision
/// steps are terminal; a timeout truncates and bootstraps. States without
/// humans carry empty feature lists and are skipped by the trainers.
struct Transition {
  std::vector<sim::RobotHumanState> state;
  std::vector<sim::RobotHumanState> next_state;
  double reward = 0.0;
  bool terminal = false;
};

std::vector<Transition> episode_transitions(const sim::EpisodeSetup& setup,
                                            const sim::EpisodeLog& log,
                                            double d_c, double gamma,
                                            double dt);

/// Regresses the value net toward discounted returns of episodes driven by
/// the reciprocal-avoidance policy. Zero episodes leave the net untouched.
TrainReport imitation_warmstart(ValueNet& net, const ScenarioSource& scenarios,
                                std::size_t episode_count,
                                const TrainConfig& cfg);

/// Temporal-difference training with experience replay and a periodically
/// synced target network; episodes run against a reciprocal-avoidance crowd
/// with epsilon-greedy exploration. Throws DataError on divergence.
TrainReport td_train(ValueNet& net, const ScenarioSource& scenarios,
                     const TrainConfig& cfg);

}  // namespace socnav::policy
