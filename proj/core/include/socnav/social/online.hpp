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

#include <optional>

#include "socnav/sim/state.hpp"
#include "socnav/social/social_net.hpp"

namespace socnav::social {

struct OnlineConfig {
  std::size_t l_trak = 16;  // steps between tracklet emissions
  std::size_t k_up = 3;     // robot tracklets per context check
  double k_acc = 0.5;       // accuracy below this triggers a retrain
  double r_dist_threshold = 0.9;
  SocialTrainConfig retrain{10, 32, 0.001};
  TrackletConfig tracklet;
};

/// Straightness of a tracklet: endpoint displacement over path length, in
/// [0, 1]. A path shorter than 1e-6 m counts as 1 (a stationary agent takes
/// no extra distance).
double r_dist(const Tracklet& tr);

/// 1 (social) iff r_dist strictly exceeds the threshold.
int label_tracklet(const Tracklet& tr, double threshold);
std::vector<int> label_tracklets(const std::vector<Tracklet>& tracklets,
                                 double threshold);

/// One classifier retrain triggered by a failed context check.
struct UpdateEvent {
  double t = 0.0;
  double trigger_accuracy = 0.0;
  std::size_t d_new_size = 0;
  std::size_t d_new_social = 0;  // label-1 share of the training set
  double post_accuracy = 0.0;    // binarized, on the training set
  double retrain_ms = 0.0;
};

/// Compares distance-ratio labels of the window against the classifier and
/// empties the window. Returns true (context OK) when the accuracy reaches
/// cfg.k_acc; an empty window passes trivially. The accuracy is reported
/// through accuracy_out when given.
bool context_check(std::vector<Tracklet>& window, const SocialNet& net,
                   const OnlineConfig& cfg, double* accuracy_out = nullptr);

/// Retrains the classifier on the labeled human tracklets plus the
/// non-social robot tracklets, then empties both sets. Training runs on a
/// snapshot that replaces the live weights only on completion. A training
/// set smaller than two samples skips the fit (batchnorm needs pairs) but
/// still clears the sets.
UpdateEvent online_update(std::vector<Tracklet>& human_set,
                          std::vector<Tracklet>& robot_set, SocialNet& net,
                          const OnlineConfig& cfg, Rng& rng);

/// Per-episode driver: buffers robot and human states each step, emits
/// tracklets every l_trak steps, checks the context every k_up robot
/// tracklets, and retrains the classifier when the check fails.
class OnlineLearner {
 public:
  OnlineLearner(SocialNet* net, const OnlineConfig& cfg, Rng rng);

  /// Feed the post-step world at time t. Returns an event when this step
  /// triggered a retrain.
  std::optional<UpdateEvent> observe(const sim::JointState& world, double t);
  void reset();

  std::size_t steps() const { return steps_; }
  std::size_t checks_run() const { return checks_; }
  std::size_t updates_run() const { return updates_; }
  const std::vector<Tracklet>& robot_set() const { return robot_set_; }
  const std::vector<Tracklet>& human_set() const { return human_set_; }
  const std::vector<Tracklet>& window() const { return window_; }

 private:
  SocialNet* net_;
  OnlineConfig cfg_;
  Rng rng_;
  std::size_t steps_ = 0;
  std::size_t checks_ = 0;
  std::size_t updates_ = 0;
  std::vector<TrackState> robot_buffer_;
  std::vector<std::vector<TrackState>> human_buffers_;
  std::vector<Tracklet> robot_set_;
  std::vector<Tracklet> human_set_;
  std::vector<Tracklet> window_;
};

}  // namespace socnav::social
