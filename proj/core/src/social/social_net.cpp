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

#include "socnav/social/social_net.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "socnav/error.hpp"
#include "socnav/nn/loss.hpp"
#include "socnav/nn/rmsprop.hpp"

namespace socnav::social {

SocialNet make_social_net(Rng& rng) {
  SocialNet net;
  Rng gru_rng = rng.fork("gru");
  net.gru = nn::make_gru(4, 64, gru_rng);
  Rng fc_rng = rng.fork("fc");
  net.layers.push_back(nn::make_dense(64, 32, nn::Activation::kRelu, true, fc_rng));
  net.layers.push_back(nn::make_dense(32, 16, nn::Activation::kRelu, true, fc_rng));
  net.layers.push_back(nn::make_dense(16, 8, nn::Activation::kRelu, true, fc_rng));
  net.layers.push_back(
      nn::make_dense(8, 1, nn::Activation::kSigmoid, false, fc_rng));
  return net;
}

double social_value(const SocialNet& net, const Tracklet& tr,
                    const TrackletConfig& cfg,
                    const Vec2& fallback_direction) {
  return social_values(net, {tr}, cfg, fallback_direction)[0];
}

std::vector<double> social_values(const SocialNet& net,
                                  const std::vector<Tracklet>& tracklets,
                                  const TrackletConfig& cfg,
                                  const Vec2& fallback_direction) {
  std::vector<Tracklet> normalized;
  normalized.reserve(tracklets.size());
  for (const Tracklet& tr : tracklets) {
    normalized.push_back(normalize_tracklet(tr, cfg, fallback_direction));
  }
  const nn::Tensor2 out =
      nn::net_forward(net, tracklets_to_sequence(normalized));
  std::vector<double> scores(out.rows);
  for (std::size_t i = 0; i < out.rows; ++i) scores[i] = out(i, 0);
  return scores;
}

double binary_accuracy(const std::vector<int>& labels,
                       const std::vector<int>& predictions) {
  if (labels.empty() || labels.size() != predictions.size()) {
    throw ConfigError("binary_accuracy: empty or mismatched inputs");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == predictions[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

std::vector<SocialEpochStats> train_social_net(SocialNet& net,
                                               const std::vector<Tracklet>& tracklets,
                                               const std::vector<int>& labels,
                                               const TrackletConfig& cfg,
                                               const SocialTrainConfig& tcfg,
                                               Rng& rng) {
  if (tracklets.size() < 2) {
    throw ConfigError("train_social_net: need at least two samples");
  }
  if (labels.size() != tracklets.size()) {
    throw ConfigError("train_social_net: labels do not match tracklets");
  }
  if (tcfg.epochs == 0 || tcfg.batch < 2) {
    throw ConfigError("train_social_net: epochs >= 1 and batch >= 2 required");
  }

  std::vector<Tracklet> normalized;
  normalized.reserve(tracklets.size());
  for (const Tracklet& tr : tracklets) {
    normalized.push_back(normalize_tracklet(tr, cfg));
  }

  nn::RmsPropConfig opt_cfg;
  opt_cfg.learning_rate = tcfg.lr;
  nn::RmsPropState opt = nn::make_rmsprop(nn::param_refs(net), opt_cfg);

  std::vector<std::size_t> order(tracklets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<SocialEpochStats> report;
  report.reserve(tcfg.epochs);
  for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += tcfg.batch) {
      const std::size_t size = std::min(tcfg.batch, order.size() - start);
      if (size < 2) break;
      std::vector<Tracklet> chunk;
      chunk.reserve(size);
      nn::Tensor2 y(size, 1);
      for (std::size_t i = 0; i < size; ++i) {
        chunk.push_back(normalized[order[start + i]]);
        y(i, 0) = static_cast<double>(labels[order[start + i]]);
      }
      nn::NetCache cache;
      const nn::Tensor2 out =
          nn::net_forward(net, tracklets_to_sequence(chunk), nn::Mode::kTrain,
                          &cache);
      loss_sum += nn::bce_loss(out, y) * static_cast<double>(size);
      seen += size;
      nn::NetGrads grads = nn::zero_grads(net);
      nn::net_backward(net, cache, nn::bce_grad(out, y), grads);
      nn::rmsprop_step(opt, nn::param_refs(net),
                       nn::grad_refs(std::as_const(grads)));
    }

    SocialEpochStats stats;
    stats.mean_loss = seen > 0 ? loss_sum / static_cast<double>(seen) : 0.0;
    const nn::Tensor2 scores =
        nn::net_forward(std::as_const(net), tracklets_to_sequence(normalized));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < scores.rows; ++i) {
      if (classify(scores(i, 0)) == labels[i]) ++hits;
    }
    stats.accuracy = static_cast<double>(hits) / static_cast<double>(scores.rows);
    report.push_back(stats);
  }
  return report;
}

}  // namespace socnav::social
