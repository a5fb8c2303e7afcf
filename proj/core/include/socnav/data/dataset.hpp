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
#include <string>
#include <vector>

#include "socnav/rng.hpp"
#include "socnav/social/social_net.hpp"
#include "socnav/social/tracklet.hpp"

namespace socnav::data {

enum class Split : int { kTrain = 0, kVal = 1 };

/// Tracklets with binary social labels and a shuffled train/val assignment.
struct LabeledTrackletSet {
  std::vector<social::Tracklet> tracklets;
  std::vector<int> labels;  // 1 social, 0 non-social
  std::vector<Split> split;
};

struct ClassStats {
  std::size_t count = 0;
  double r_dist_mean = 0.0;
  double r_dist_sd = 0.0;
};

struct DatasetStats {
  ClassStats social;
  ClassStats nonsocial;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
};

struct SynthConfig {
  std::size_t n_social = 7000;
  std::size_t n_nonsocial = 7000;
  std::uint64_t seed = 1;
  double val_fraction = 0.3;
  std::size_t stride = 3;  // window step when harvesting episode tracks
  social::TrackletConfig tracklet;
};

/// Labeled corpus from simulated episodes: the social class comes from
/// force-model agents weaving through their own crowd, the non-social class
/// from a reciprocal-avoidance robot cutting through the same kind of crowd.
/// Deterministic in the seed; the split is shuffled with the requested
/// fraction held out for validation.
LabeledTrackletSet synthesize_dataset(const SynthConfig& cfg);

DatasetStats dataset_stats(const LabeledTrackletSet& set);

std::string dataset_to_json(const LabeledTrackletSet& set);
LabeledTrackletSet dataset_from_json(const std::string& text);

void save_dataset(const std::string& path, const LabeledTrackletSet& set);
LabeledTrackletSet load_dataset(const std::string& path);

struct OfflineTrainConfig {
  std::size_t epochs = 50;
  std::size_t batch = 32;
  double lr = 0.001;
  std::uint64_t seed = 1;
  double loss_guard = 1e3;  // abort when an epoch loss exceeds this
};

struct OfflineEpoch {
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct OfflineReport {
  std::vector<OfflineEpoch> epochs;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
};

/// Cross-entropy RMSProp training on the train split, scoring the val split
/// after every epoch. Throws DataError when the loss diverges past the
/// guard and ConfigError when a split is empty.
OfflineReport train_social_offline(social::SocialNet& net,
                                   const LabeledTrackletSet& set,
                                   const OfflineTrainConfig& cfg,
                                   const social::TrackletConfig& tcfg);

}  // namespace socnav::data
