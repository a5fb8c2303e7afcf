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

#include "socnav/nn/rmsprop.hpp"

#include <cmath>

#include "socnav/error.hpp"

namespace socnav::nn {

RmsPropState make_rmsprop(const std::vector<Tensor2*>& params,
                          const RmsPropConfig& config) {
  RmsPropState state;
  state.config = config;
  state.mean_square.reserve(params.size());
  for (const Tensor2* p : params) {
    state.mean_square.push_back(Tensor2::zeros_like(*p));
  }
  return state;
}

void rmsprop_step(RmsPropState& state, const std::vector<Tensor2*>& params,
                  const std::vector<const Tensor2*>& grads) {
  if (params.size() != grads.size() ||
      params.size() != state.mean_square.size()) {
    throw ConfigError("rmsprop_step: parameter list mismatch");
  }
  const double lr = state.config.learning_rate;
  const double decay = state.config.decay;
  const double eps = state.config.epsilon;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor2& theta = *params[i];
    const Tensor2& g = *grads[i];
    Tensor2& ms = state.mean_square[i];
    if (!theta.same_shape(g) || !theta.same_shape(ms)) {
      throw ConfigError("rmsprop_step: tensor shape mismatch");
    }
    for (std::size_t k = 0; k < theta.data.size(); ++k) {
      const double gk = g.data[k];
      ms.data[k] = decay * ms.data[k] + (1.0 - decay) * gk * gk;
      theta.data[k] -= lr * gk / (std::sqrt(ms.data[k]) + eps);
    }
  }
}

}  // namespace socnav::nn
