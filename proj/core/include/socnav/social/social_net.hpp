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

#include "socnav/nn/net.hpp"
#include "socnav/rng.hpp"
#include "socnav/social/tracklet.hpp"

namespace socnav::social {

/// Tracklet classifier: a GRU over the per-step (px, py, vx, vy) sequence
/// feeds four dense layers ending in a sigmoid score, near 1 for socially
/// moving agents. Inputs are normalized tracklets.
using SocialNet = nn::GruMlpNet;

/// GRU(4 -> 64) plus 64 -> 32 -> 16 -> 8 -> 1; the hidden dense layers use
/// batchnorm and ReLU, the output layer a sigmoid.
SocialNet make_social_net(Rng& rng);

/// Score of one tracklet. Normalization happens here: the tracklet is
/// re-centered on its current state and rotated to its current heading
/// (fallback direction used below 1e-3 m/s).
double social_value(const SocialNet& net, const Tracklet& tr,
                    const TrackletConfig& cfg,
                    const Vec2& fallback_direction = {1.0, 0.0});

/// Scores for a batch of tracklets sharing one fallback direction.
/// Row-for-row identical to calling social_value per tracklet.
std::vector<double> social_values(const SocialNet& net,
                                  const std::vector<Tracklet>& tracklets,
                                  const TrackletConfig& cfg,
                                  const Vec2& fallback_direction = {1.0, 0.0});

/// Binary social label: 1 iff the score strictly exceeds 1/2.
inline int classify(double score) { return score > 0.5 ? 1 : 0; }

/// Fraction of matching entries. Throws ConfigError on empty or mismatched
/// inputs.
double binary_accuracy(const std::vector<int>& labels,
                       const std::vector<int>& predictions);

struct SocialTrainConfig {
  std::size_t epochs = 50;
  std::size_t batch = 32;
  double lr = 0.001;
};

struct SocialEpochStats {
  double mean_loss = 0.0;
  double accuracy = 0.0;  // binarized, on the training set
};

/// Cross-entropy training of the classifier on labeled tracklets with
/// RMSProp, shuffling every epoch. Normalization happens once up front.
/// Minibatches run in train mode, so a trailing singleton batch is dropped
/// (batchnorm needs at least two rows). Throws ConfigError on fewer than
/// two samples or mismatched labels.
std::vector<SocialEpochStats> train_social_net(SocialNet& net,
                                               const std::vector<Tracklet>& tracklets,
                                               const std::vector<int>& labels,
                                               const TrackletConfig& cfg,
                                               const SocialTrainConfig& tcfg,
                                               Rng& rng);

}  // namespace socnav::social
