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

#include "socnav/social/online.hpp"

#include <chrono>
#include <cstdio>
#include <utility>

#include "socnav/error.hpp"

namespace socnav::social {

namespace {

// Keeps the newest u + 1 states: u of history plus the current one.
void push_capped(std::vector<TrackState>& buffer, const TrackState& s,
                 std::size_t u) {
  buffer.push_back(s);
  if (buffer.size() > u + 1) buffer.erase(buffer.begin());
}

Tracklet emit_from_buffer(const std::vector<TrackState>& buffer,
                          const TrackletConfig& cfg) {
  const TrackState& current = buffer.back();
  const std::vector<TrackState> history(buffer.begin(), buffer.end() - 1);
  // The buffered velocity is the agent's executed command, so constant
  // extrapolation of it matches the tracklet the policy would build.
  return *build_tracklet(history, current, current.v, cfg);
}

}  // namespace

double r_dist(const Tracklet& tr) {
  if (tr.states.size() < 2) {
    throw ConfigError("r_dist: tracklet needs at least two states");
  }
  double d_a = 0.0;
  for (std::size_t i = 1; i < tr.states.size(); ++i) {
    d_a += (tr.states[i].p - tr.states[i - 1].p).norm();
  }
  if (d_a < 1e-6) return 1.0;
  const double d_s = (tr.states.back().p - tr.states.front().p).norm();
  return d_s / d_a;
}

int label_tracklet(const Tracklet& tr, double threshold) {
  return r_dist(tr) > threshold ? 1 : 0;
}

std::vector<int> label_tracklets(const std::vector<Tracklet>& tracklets,
                                 double threshold) {
  std::vector<int> labels;
  labels.reserve(tracklets.size());
  for (const Tracklet& tr : tracklets) {
    labels.push_back(label_tracklet(tr, threshold));
  }
  return labels;
}

bool context_check(std::vector<Tracklet>& window, const SocialNet& net,
                   const OnlineConfig& cfg, double* accuracy_out) {
  if (window.empty()) {
    if (accuracy_out != nullptr) *accuracy_out = 1.0;
    return true;
  }
  const std::vector<int> labels =
      label_tracklets(window, cfg.r_dist_threshold);
  const std::vector<double> scores =
      social_values(net, window, cfg.tracklet);
  std::vector<int> predicted;
  predicted.reserve(scores.size());
  for (double sv : scores) predicted.push_back(classify(sv));
  window.clear();
  const double accuracy = binary_accuracy(labels, predicted);
  if (accuracy_out != nullptr) *accuracy_out = accuracy;
  return accuracy >= cfg.k_acc;
}

UpdateEvent online_update(std::vector<Tracklet>& human_set,
                          std::vector<Tracklet>& robot_set, SocialNet& net,
                          const OnlineConfig& cfg, Rng& rng) {
  std::vector<Tracklet> data = human_set;
  std::vector<int> labels = label_tracklets(human_set, cfg.r_dist_threshold);
  const std::vector<int> robot_labels =
      label_tracklets(robot_set, cfg.r_dist_threshold);
  for (std::size_t i = 0; i < robot_set.size(); ++i) {
    if (robot_labels[i] == 0) {
      data.push_back(robot_set[i]);
      labels.push_back(0);
    }
  }
  human_set.clear();
  robot_set.clear();

  UpdateEvent event;
  event.d_new_size = data.size();
  for (int y : labels) event.d_new_social += static_cast<std::size_t>(y);
  if (event.d_new_social == 0 || event.d_new_social == labels.size()) {
    std::fprintf(stderr,
                 "online_update: single-class training set (%zu samples)\n",
                 labels.size());
  }

  if (data.size() >= 2) {
    SocialNet snapshot = net;
    const auto started = std::chrono::steady_clock::now();
    const std::vector<SocialEpochStats> report = train_social_net(
        snapshot, data, labels, cfg.tracklet, cfg.retrain, rng);
    const auto finished = std::chrono::steady_clock::now();
    event.retrain_ms =
        std::chrono::duration<double, std::milli>(finished - started).count();
    net = std::move(snapshot);
    event.post_accuracy = report.back().accuracy;
  } else if (!data.empty()) {
    const double sv = social_value(net, data.front(), cfg.tracklet);
    event.post_accuracy = classify(sv) == labels.front() ? 1.0 : 0.0;
  }
  return event;
}

OnlineLearner::OnlineLearner(SocialNet* net, const OnlineConfig& cfg, Rng rng)
    : net_(net), cfg_(cfg), rng_(rng) {
  if (net_ == nullptr) throw ConfigError("OnlineLearner: null net");
  if (cfg_.k_up < 1 || cfg_.k_acc <= 0.0 || cfg_.k_acc > 1.0 ||
      cfg_.r_dist_threshold <= 0.0 || cfg_.r_dist_threshold > 1.0 ||
      cfg_.l_trak < cfg_.tracklet.u + 1) {
    throw ConfigError("OnlineLearner: bad config");
  }
}

std::optional<UpdateEvent> OnlineLearner::observe(const sim::JointState& world,
                                                  double t) {
  if (human_buffers_.size() != world.humans.size()) {
    human_buffers_.assign(world.humans.size(), {});
  }
  push_capped(robot_buffer_, {world.robot.p, world.robot.v}, cfg_.tracklet.u);
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    push_capped(human_buffers_[i], {world.humans[i].p, world.humans[i].v},
                cfg_.tracklet.u);
  }
  ++steps_;
  if (steps_ % cfg_.l_trak != 0) return std::nullopt;

  robot_set_.push_back(emit_from_buffer(robot_buffer_, cfg_.tracklet));
  for (const std::vector<TrackState>& buffer : human_buffers_) {
    // A buffer reset by a mid-episode crowd change may not be full yet.
    if (buffer.size() < cfg_.tracklet.u + 1) continue;
    Tracklet tr = emit_from_buffer(buffer, cfg_.tracklet);
    human_set_.push_back(tr);
    window_.push_back(std::move(tr));
  }
  if (robot_set_.size() % cfg_.k_up != 0) return std::nullopt;

  ++checks_;
  double accuracy = 1.0;
  if (context_check(window_, *net_, cfg_, &accuracy)) return std::nullopt;

  ++updates_;
  UpdateEvent event = online_update(human_set_, robot_set_, *net_, cfg_, rng_);
  event.t = t;
  event.trigger_accuracy = accuracy;
  return event;
}

void OnlineLearner::reset() {
  steps_ = 0;
  checks_ = 0;
  updates_ = 0;
  robot_buffer_.clear();
  human_buffers_.clear();
  robot_set_.clear();
  human_set_.clear();
  window_.clear();
}

}  // namespace socnav::social
