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
#include <string>
#include <vector>

#include "socnav/nn/layers.hpp"
#include "socnav/nn/rmsprop.hpp"
#include "socnav/rng.hpp"
#include "socnav/sim/state.hpp"

namespace socnav::policy {

/// Leading features of RobotHumanState that describe the robot alone; they
/// are identical across the per-human rows and feed the value head directly.
inline constexpr std::size_t kSelfFeatures = 6;
inline constexpr std::size_t kCrowdFeature = 32;

/// State value over a variable-size crowd: each robot-human pair is embedded
/// by an MLP, an attention MLP scores the embeddings, and their softmax-
/// weighted sum joins the robot self-state in the value head.
struct ValueNet {
  std::vector<nn::DenseLayer> embed;      // 13 -> 64 -> 32
  std::vector<nn::DenseLayer> attention;  // 32 -> 32 -> 1
  std::vector<nn::DenseLayer> head;       // 38 -> 64 -> 32 -> 1
};

ValueNet make_value_net(Rng& rng);

struct ValueCache {
  std::vector<sim::RobotHumanState> sorted;
  std::vector<nn::DenseCache> embed;
  std::vector<nn::DenseCache> attention;
  std::vector<nn::DenseCache> head;
  nn::Tensor2 embeddings;       // n x 32
  std::vector<double> weights;  // softmax attention, size n
  nn::Tensor2 head_input;       // 1 x 38
};

/// The humans are brought into a canonical order before evaluation, so any
/// permutation of the input list yields bit-identical output. Requires at
/// least one entry (ConfigError otherwise).
double value_forward(const ValueNet& net,
                     const std::vector<sim::RobotHumanState>& rh_states,
                     ValueCache* cache = nullptr);

struct ValueGrads {
  std::vector<nn::DenseGrads> embed;
  std::vector<nn::DenseGrads> attention;
  std::vector<nn::DenseGrads> head;
};

ValueGrads zero_grads(const ValueNet& net);

/// Accumulates d(value)/d(params) scaled by d_value into grads.
void value_backward(const ValueNet& net, const ValueCache& cache,
                    double d_value, ValueGrads& grads);

/// Trainable parameters in a fixed order (embed, attention, head; W then b
/// per layer).
std::vector<nn::Tensor2*> param_refs(ValueNet& net);
std::vector<const nn::Tensor2*> param_refs(const ValueNet& net);
std::vector<const nn::Tensor2*> grad_refs(const ValueGrads& grads);
std::vector<nn::Tensor2*> grad_refs(ValueGrads& grads);
bool net_finite(const ValueNet& net);

/// Checkpoints share the hex-float weight document conventions; the kind
/// tag is "value_net".
std::string value_net_to_json_string(const ValueNet& net,
                                     const nn::RmsPropState* optimizer = nullptr);
ValueNet value_net_from_json_string(
    const std::string& text,
    std::optional<nn::RmsPropState>* optimizer = nullptr);
void save_value_net(const std::string& path, const ValueNet& net,
                    const nn::RmsPropState* optimizer = nullptr);
ValueNet load_value_net(const std::string& path,
                        std::optional<nn::RmsPropState>* optimizer = nullptr);

}  // namespace socnav::policy
