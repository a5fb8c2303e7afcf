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

#include <vector>

#include "socnav/nn/tensor.hpp"

namespace socnav::nn {

struct RmsPropConfig {
  double learning_rate = 0.001;
  double decay = 0.9;
  double epsilon = 1e-8;
};

/// Per-parameter running mean of squared gradients, one slot per tensor in
/// the parameter list it was built for.
struct RmsPropState {
  RmsPropConfig config;
  std::vector<Tensor2> mean_square;
};

/// Builds a zeroed state matching the given parameter tensors.
RmsPropState make_rmsprop(const std::vector<Tensor2*>& params,
                          const RmsPropConfig& config);

/// mean_square <- decay * mean_square + (1 - decay) * g^2
/// theta       <- theta - lr * g / (sqrt(mean_square) + epsilon)
void rmsprop_step(RmsPropState& state, const std::vector<Tensor2*>& params,
                  const std::vector<const Tensor2*>& grads);

}  // namespace socnav::nn
