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

#include "socnav/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "socnav/data/trajectory.hpp"
#include "socnav/error.hpp"
#include "socnav/nn/loss.hpp"
#include "socnav/nn/net.hpp"
#include "socnav/nn/rmsprop.hpp"
#include "socnav/policies/crowd.hpp"
#include "socnav/sim/state.hpp"
#include "socnav/social/online.hpp"

namespace socnav::data {

namespace {

constexpr double kCircleRadius = 4.0;
constexpr double kGoalJitter = 0.5;
constexpr double kClearance = 0.6;
constexpr std::size_t kEpisodeSteps = 120;
// Humans integrate at a fifth of the sample interval so their force-model
// paths stay smooth; the driven robot replans only at the sample rate and
// keeps its stepwise velocity switches.
constexpr std::size_t kSubsteps = 5;

// Long-range, gentle repulsion. The default force parameters are tuned for
// reactive crowds; the recorded stand-ins should avoid each other early and
// smoothly, the way people actually walk.
policies::SfParams smooth_sf_params() {
  policies::SfParams params;
  params.relaxation_time = 0.8;
  params.repulsion_strength = 1.0;
  params.repulsion_range = 0.6;
  return params;
}

sim::HumanState sample_crowd_human(const sim::JointState& world, Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    sim::HumanState h;
    h.p = Vec2{std::cos(angle), std::sin(angle)} * kCircleRadius;
    h.goal = -h.p + Vec2{rng.uniform(-kGoalJitter, kGoalJitter),
                         rng.uniform(-kGoalJitter, kGoalJitter)};
    h.home = h.p;
    bool clear = (h.p - world.robot.p).norm() >= kClearance;
    for (const sim::HumanState& other : world.humans) {
      clear = clear && (h.p - other.p).norm() >= kClearance;
    }
    if (clear) return h;
  }
  throw DataError("synthesize_dataset: no clear spawn after 1000 tries");
}

sim::JointState crowd_world(std::size_t n_humans, const Vec2& robot_p,
                            const Vec2& robot_goal, Rng& rng) {
  sim::JointState world;
  world.robot.p = robot_p;
  world.robot.goal = robot_goal;
  for (std::size_t i = 0; i < n_humans; ++i) {
    world.humans.push_back(sample_crowd_human(world, rng));
  }
  return world;
}

void pingpong(sim::HumanState& h) {
  if ((h.p - h.goal).norm() < h.r) std::swap(h.goal, h.home);
}

struct EpisodeStreams {
  std::vector<std::vector<social::TrackState>> humans;
  std::vector<social::TrackState> robot;
};

// Steps the crowd (and optionally the robot) for kEpisodeSteps and records
// every agent at the sample rate.
EpisodeStreams run_crowd_episode(sim::JointState world, sim::CrowdPolicy& crowd,
                                 sim::RobotPolicy* drive_robot, double dt) {
  const std::size_t n = world.humans.size();
  Vec2 robot_home = world.robot.p;
  EpisodeStreams streams;
  streams.humans.resize(n);
  for (auto& stream : streams.humans) stream.reserve(kEpisodeSteps + 1);
  if (drive_robot) streams.robot.reserve(kEpisodeSteps + 1);

  const auto record = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      streams.humans[i].push_back({world.humans[i].p, world.humans[i].v});
    }
    if (drive_robot) streams.robot.push_back({world.robot.p, world.robot.v});
  };

  const double sub_dt = dt / static_cast<double>(kSubsteps);
  record();
  for (std::size_t step = 0; step < kEpisodeSteps; ++step) {
    Vec2 robot_v{};
    if (drive_robot) {
      const sim::Action action = drive_robot->act(world);
      robot_v = action.velocity();
    }
    for (std::size_t sub = 0; sub < kSubsteps; ++sub) {
      // The crowd never yields to the driven robot: humans stand in for
      // recorded traffic, so the avoidance burden falls entirely on the
      // robot.
      sim::JointState crowd_view = world;
      if (drive_robot) {
        crowd_view.robot.p = Vec2{500.0, 500.0};
        crowd_view.robot.v = Vec2{};
      }
      const std::vector<Vec2> vels = crowd.act(crowd_view);
      for (std::size_t i = 0; i < n; ++i) {
        world.humans[i].v = vels[i];
        world.humans[i].p += vels[i] * sub_dt;
        pingpong(world.humans[i]);
      }
      world.robot.v = robot_v;
      world.robot.p += robot_v * sub_dt;
      if (drive_robot &&
          (world.robot.p - world.robot.goal).norm() < world.robot.r) {
        std::swap(world.robot.goal, robot_home);
      }
      world.time += sub_dt;
    }
    record();
  }
  return streams;
}

// A window with nobody nearby is plain cruising and carries no class signal,
// so only windows that bring the subject within kInteractionRadius of
// another agent are kept.
constexpr double kInteractionRadius = 2.0;

void harvest_interacting(const std::vector<social::TrackState>& subject,
                         const std::vector<const std::vector<social::TrackState>*>& others,
                         const social::TrackletConfig& tcfg, std::size_t stride,
                         std::size_t wanted, std::vector<social::Tracklet>& out) {
  std::vector<social::Tracklet> windows = segment_tracklets(subject, tcfg, stride);
  for (std::size_t k = 0; k < windows.size(); ++k) {
    if (out.size() >= wanted) return;
    const std::size_t current = tcfg.u + k * stride;
    bool interacting = false;
    for (std::size_t t = current - tcfg.u; t <= current && !interacting; ++t) {
      for (const auto* other : others) {
        if ((subject[t].p - (*other)[t].p).norm() < kInteractionRadius) {
          interacting = true;
          break;
        }
      }
    }
    if (interacting) out.push_back(std::move(windows[k]));
  }
}

ClassStats class_stats(const LabeledTrackletSet& set, int label) {
  ClassStats stats;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < set.tracklets.size(); ++i) {
    if (set.labels[i] != label) continue;
    const double r = social::r_dist(set.tracklets[i]);
    ++stats.count;
    sum += r;
    sum_sq += r * r;
  }
  if (stats.count > 0) {
    const double n = static_cast<double>(stats.count);
    stats.r_dist_mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - stats.r_dist_mean * stats.r_dist_mean);
    stats.r_dist_sd = std::sqrt(var);
  }
  return stats;
}

}  // namespace

LabeledTrackletSet synthesize_dataset(const SynthConfig& cfg) {
  if (cfg.n_social == 0 || cfg.n_nonsocial == 0)
    throw ConfigError("synthesize_dataset: both classes need tracklets");
  if (cfg.val_fraction <= 0.0 || cfg.val_fraction >= 1.0)
    throw ConfigError("synthesize_dataset: val_fraction must be in (0, 1)");

  Rng rng(cfg.seed);

  // Social: force-model agents crossing their own crowd. The robot slot is
  // parked far outside the arena so it cannot disturb anyone.
  std::vector<social::Tracklet> social_tracklets;
  {
    Rng episode_rng = rng.fork("social");
    for (std::uint64_t episode = 0; social_tracklets.size() < cfg.n_social;
         ++episode) {
      Rng r = episode_rng.fork(episode);
      const std::size_t n_humans = 5 + episode % 6;
      sim::JointState world =
          crowd_world(n_humans, Vec2{500.0, 500.0}, Vec2{500.0, 500.0}, r);
      policies::SfCrowd crowd(smooth_sf_params(), cfg.tracklet.dt / kSubsteps);
      const EpisodeStreams streams =
          run_crowd_episode(world, crowd, nullptr, cfg.tracklet.dt);
      for (std::size_t i = 0; i < streams.humans.size(); ++i) {
        std::vector<const std::vector<social::TrackState>*> others;
        for (std::size_t j = 0; j < streams.humans.size(); ++j) {
          if (j != i) others.push_back(&streams.humans[j]);
        }
        harvest_interacting(streams.humans[i], others, cfg.tracklet,
                            cfg.stride, cfg.n_social, social_tracklets);
      }
    }
  }

  // Non-social: a plain reciprocal-avoidance robot ping-ponging through the
  // same kind of crowd.
  std::vector<social::Tracklet> robot_tracklets;
  {
    Rng episode_rng = rng.fork("nonsocial");
    for (std::uint64_t episode = 0; robot_tracklets.size() < cfg.n_nonsocial;
         ++episode) {
      Rng r = episode_rng.fork(episode);
      const std::size_t n_humans = 5 + episode % 6;
      sim::JointState world = crowd_world(n_humans, Vec2{-kCircleRadius, 0.0},
                                          Vec2{kCircleRadius, 0.0}, r);
      policies::SfCrowd crowd(smooth_sf_params(), cfg.tracklet.dt / kSubsteps);
      policies::OrcaRobotPolicy robot;
      const EpisodeStreams streams =
          run_crowd_episode(world, crowd, &robot, cfg.tracklet.dt);
      std::vector<const std::vector<social::TrackState>*> others;
      for (const auto& stream : streams.humans) others.push_back(&stream);
      harvest_interacting(streams.robot, others, cfg.tracklet, cfg.stride,
                          cfg.n_nonsocial, robot_tracklets);
    }
  }

  LabeledTrackletSet set;
  set.tracklets.reserve(cfg.n_social + cfg.n_nonsocial);
  for (auto& tr : social_tracklets) {
    set.tracklets.push_back(std::move(tr));
    set.labels.push_back(1);
  }
  for (auto& tr : robot_tracklets) {
    set.tracklets.push_back(std::move(tr));
    set.labels.push_back(0);
  }

  // Shuffled split with the requested held-out fraction.
  const std::size_t total = set.tracklets.size();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng = rng.fork("split");
  split_rng.shuffle(order);
  const std::size_t n_val = static_cast<std::size_t>(
      std::llround(cfg.val_fraction * static_cast<double>(total)));
  set.split.assign(total, Split::kTrain);
  for (std::size_t k = 0; k < n_val && k < total; ++k) {
    set.split[order[k]] = Split::kVal;
  }
  return set;
}

DatasetStats dataset_stats(const LabeledTrackletSet& set) {
  if (set.tracklets.size() != set.labels.size() ||
      set.tracklets.size() != set.split.size()) {
    throw ConfigError("dataset_stats: mismatched set");
  }
  DatasetStats stats;
  stats.social = class_stats(set, 1);
  stats.nonsocial = class_stats(set, 0);
  for (const Split s : set.split) {
    if (s == Split::kTrain) {
      ++stats.train_count;
    } else {
      ++stats.val_count;
    }
  }
  return stats;
}

std::string dataset_to_json(const LabeledTrackletSet& set) {
  nlohmann::json tracklets = nlohmann::json::array();
  for (const social::Tracklet& tr : set.tracklets) {
    nlohmann::json states = nlohmann::json::array();
    for (const social::TrackState& s : tr.states) {
      states.push_back({s.p.x, s.p.y, s.v.x, s.v.y});
    }
    tracklets.push_back(std::move(states));
  }
  nlohmann::json split = nlohmann::json::array();
  for (const Split s : set.split) split.push_back(static_cast<int>(s));
  const nlohmann::json doc = {{"version", 1},
                              {"tracklets", std::move(tracklets)},
                              {"labels", set.labels},
                              {"split", std::move(split)}};
  return doc.dump();
}

LabeledTrackletSet dataset_from_json(const std::string& text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    LabeledTrackletSet set;
    for (const auto& states : doc.at("tracklets")) {
      social::Tracklet tr;
      for (const auto& s : states) {
        tr.states.push_back({Vec2{s.at(0).get<double>(), s.at(1).get<double>()},
                             Vec2{s.at(2).get<double>(), s.at(3).get<double>()}});
      }
      set.tracklets.push_back(std::move(tr));
    }
    set.labels = doc.at("labels").get<std::vector<int>>();
    for (const auto& s : doc.at("split")) {
      set.split.push_back(static_cast<Split>(s.get<int>()));
    }
    if (set.tracklets.size() != set.labels.size() ||
        set.tracklets.size() != set.split.size()) {
      throw DataError("dataset: mismatched array lengths");
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("dataset: ") + e.what());
  }
}

void save_dataset(const std::string& path, const LabeledTrackletSet& set) {
  std::ofstream out(path);
  if (!out) throw DataError("save_dataset: cannot open " + path);
  out << dataset_to_json(set);
  if (!out) throw DataError("save_dataset: write failed for " + path);
}

LabeledTrackletSet load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load_dataset: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return dataset_from_json(buffer.str());
}

OfflineReport train_social_offline(social::SocialNet& net,
                                   const LabeledTrackletSet& set,
                                   const OfflineTrainConfig& cfg,
                                   const social::TrackletConfig& tcfg) {
  if (cfg.epochs == 0) throw ConfigError("train_social_offline: epochs");
  if (cfg.batch < 2) throw ConfigError("train_social_offline: batch must be >= 2");
  if (set.tracklets.size() != set.labels.size() ||
      set.tracklets.size() != set.split.size()) {
    throw ConfigError("train_social_offline: mismatched set");
  }

  std::vector<social::Tracklet> normalized;
  normalized.reserve(set.tracklets.size());
  for (const social::Tracklet& tr : set.tracklets) {
    normalized.push_back(normalize_tracklet(tr, tcfg));
  }

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  for (std::size_t i = 0; i < set.split.size(); ++i) {
    (set.split[i] == Split::kTrain ? train_idx : val_idx).push_back(i);
  }
  if (train_idx.size() < 2 || val_idx.empty())
    throw ConfigError("train_social_offline: both splits must be populated");

  const auto gather = [&](const std::vector<std::size_t>& idx,
                          std::size_t begin, std::size_t end) {
    std::vector<social::Tracklet> batch;
    std::vector<double> targets;
    batch.reserve(end - begin);
    for (std::size_t k = begin; k < end; ++k) {
      batch.push_back(normalized[idx[k]]);
      targets.push_back(static_cast<double>(set.labels[idx[k]]));
    }
    return std::make_pair(std::move(batch), std::move(targets));
  };

  const auto score_split = [&](const std::vector<std::size_t>& idx,
                               double* loss_out) {
    auto [batch, targets] = gather(idx, 0, idx.size());
    const std::vector<nn::Tensor2> seq = tracklets_to_sequence(batch);
    const nn::Tensor2 scores = nn::net_forward(std::as_const(net), seq);
    std::vector<int> predictions;
    std::vector<int> labels;
    predictions.reserve(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      predictions.push_back(social::classify(scores(k, 0)));
      labels.push_back(set.labels[idx[k]]);
    }
    if (loss_out) {
      nn::Tensor2 target_col(idx.size(), 1);
      for (std::size_t k = 0; k < idx.size(); ++k)
        target_col(k, 0) = targets[k];
      *loss_out = nn::bce_loss(scores, target_col);
    }
    return social::binary_accuracy(labels, predictions);
  };

  nn::RmsPropConfig opt_cfg;
  opt_cfg.learning_rate = cfg.lr;
  nn::RmsPropState opt = nn::make_rmsprop(nn::param_refs(net), opt_cfg);
  Rng rng(cfg.seed);

  OfflineReport report;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(train_idx);

    double loss_sum = 0.0;
    std::size_t rows = 0;
    for (std::size_t begin = 0; begin < train_idx.size();
         begin += cfg.batch) {
      const std::size_t end = std::min(begin + cfg.batch, train_idx.size());
      if (end - begin < 2) continue;  // batchnorm needs two rows
      auto [batch, targets] = gather(train_idx, begin, end);
      const std::vector<nn::Tensor2> seq = tracklets_to_sequence(batch);

      nn::NetCache cache;
      const nn::Tensor2 scores =
          nn::net_forward(net, seq, nn::Mode::kTrain, &cache);
      nn::Tensor2 target_col(end - begin, 1);
      for (std::size_t k = 0; k < targets.size(); ++k)
        target_col(k, 0) = targets[k];

      const double loss = nn::bce_loss(scores, target_col);
      loss_sum += loss * static_cast<double>(end - begin);
      rows += end - begin;

      nn::NetGrads grads = nn::zero_grads(net);
      const nn::Tensor2 dloss = nn::bce_grad(scores, target_col);
      nn::net_backward(net, cache, dloss, grads);
      nn::rmsprop_step(opt, nn::param_refs(net),
                       nn::grad_refs(std::as_const(grads)));
    }

    OfflineEpoch stats;
    stats.train_loss = rows > 0 ? loss_sum / static_cast<double>(rows) : 0.0;
    if (!(stats.train_loss <= cfg.loss_guard)) {
      throw DataError("train_social_offline diverged: loss " +
                      std::to_string(stats.train_loss));
    }
    stats.val_accuracy = score_split(val_idx, &stats.val_loss);
    report.epochs.push_back(stats);
  }

  report.train_accuracy = score_split(train_idx, nullptr);
  report.val_accuracy = report.epochs.back().val_accuracy;
  return report;
}

}  // namespace socnav::data
