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

#include "socnav/nn/layers.hpp"

namespace socnav::nn {

/// Recurrent encoder plus dense head: a GRU consumes an input sequence and
/// its final hidden state feeds a stack of dense layers. This fixed
/// topology is the substrate for the tracklet classifier; it is not a
/// general autodiff graph.
struct GruMlpNet {
  GruParams gru;
  std::vector<DenseLayer> layers;
};

struct NetCache {
  std::vector<GruStepCache> gru_steps;
  Tensor2 h_final;
  std::vector<DenseCache> dense;
};

/// seq holds T input batches of shape (B x input_size); the hidden state
/// starts at zero. Returns the final layer output (B x out). Train mode
/// updates batchnorm running statistics.
Tensor2 net_forward(GruMlpNet& net, const std::vector<Tensor2>& seq,
                    Mode mode, NetCache* cache = nullptr);
/// Infer-mode forward on a const net.
Tensor2 net_forward(const GruMlpNet& net, const std::vector<Tensor2>& seq,
                    NetCache* cache = nullptr);

struct NetGrads {
  GruGrads gru;
  std::vector<DenseGrads> dense;
};

NetGrads zero_grads(const GruMlpNet& net);

/// Reverse-mode pass from d(out) back through the dense stack and the GRU
/// unroll; accumulates into grads.
void net_backward(const GruMlpNet& net, const NetCache& cache,
                  const Tensor2& d_out, NetGrads& grads);

/// Trainable parameters in a fixed order (GRU gates, then per layer W, b,
/// and batchnorm gamma/beta). Running statistics are not trainable.
std::vector<Tensor2*> param_refs(GruMlpNet& net);
std::vector<const Tensor2*> param_refs(const GruMlpNet& net);
std::vector<const Tensor2*> grad_refs(const NetGrads& grads);
std::vector<Tensor2*> grad_refs(NetGrads& grads);

/// True when every parameter and running statistic is finite.
bool net_finite(const GruMlpNet& net);

/// Replaces every batchnorm layer's running statistics with the exact
/// statistics of the given batch (one train-mode pass with momentum one).
/// A moving average trails the shifting activations of a net still in
/// training; after the last update, inference should normalize with the
/// statistics the final weights actually produce.
void refresh_batchnorm(GruMlpNet& net, const std::vector<Tensor2>& seq);

}  // namespace socnav::nn
