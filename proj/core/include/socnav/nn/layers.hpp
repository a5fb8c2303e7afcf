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

#include "socnav/nn/tensor.hpp"
#include "socnav/rng.hpp"

namespace socnav::nn {

enum class Activation { kIdentity, kRelu, kSigmoid };
enum class Mode { kTrain, kInfer };

/// Batch normalization over the batch dimension, applied after the affine
/// transform and before the activation. Batch statistics use the biased
/// (population) variance so infer-mode output converges to train-mode
/// output as the running stats converge.
struct BatchNorm {
  Tensor2 gamma;         // 1 x width
  Tensor2 beta;          // 1 x width
  Tensor2 running_mean;  // 1 x width
  Tensor2 running_var;   // 1 x width
  double momentum = 0.1;
  double epsilon = 1e-5;
};

struct DenseLayer {
  Tensor2 W;  // out x in
  Tensor2 b;  // 1 x out
  Activation activation = Activation::kIdentity;
  std::optional<BatchNorm> batchnorm;

  std::size_t in_size() const { return W.cols; }
  std::size_t out_size() const { return W.rows; }
};

struct GruParams {
  std::size_t input_size = 0;
  std::size_t hidden_size = 0;
  Tensor2 Wz, Wr, Wh;  // hidden x input
  Tensor2 Uz, Ur, Uh;  // hidden x hidden
  Tensor2 bz, br, bh;  // 1 x hidden
};

DenseLayer make_dense(std::size_t in, std::size_t out, Activation act,
                      bool with_batchnorm, Rng& rng);
GruParams make_gru(std::size_t input, std::size_t hidden, Rng& rng);

struct DenseCache {
  Tensor2 x;        // input batch
  Tensor2 lin;      // x W^T + b
  Tensor2 mu, var;  // batch stats when BN ran in train mode
  Tensor2 xhat;     // normalized pre-activation when BN present
  Tensor2 pre_act;  // input of the activation
  Tensor2 out;
  Mode mode = Mode::kInfer;
};

/// y = act(BN(x W^T + b)). Train mode uses batch statistics and updates the
/// running stats; infer mode reads the running stats and leaves the layer
/// untouched. Train-mode batchnorm needs a batch of at least 2 rows.
Tensor2 dense_forward(const Tensor2& x, DenseLayer& layer, Mode mode,
                      DenseCache* cache = nullptr);
/// Infer-mode forward on a const layer.
Tensor2 dense_forward(const Tensor2& x, const DenseLayer& layer,
                      DenseCache* cache = nullptr);

struct DenseGrads {
  Tensor2 dW, db;
  Tensor2 dgamma, dbeta;  // empty when no batchnorm
};

/// Accumulates parameter gradients into grads and returns dL/dx.
Tensor2 dense_backward(const Tensor2& d_out, const DenseLayer& layer,
                       const DenseCache& cache, DenseGrads& grads);

struct GruStepCache {
  Tensor2 x;       // B x in
  Tensor2 h_prev;  // B x H
  Tensor2 z, r, hcand;
};

/// One GRU step on a batch of rows:
///   z = sigmoid(x Wz^T + h Uz^T + bz)
///   r = sigmoid(x Wr^T + h Ur^T + br)
///   hcand = tanh(x Wh^T + (r . h) Uh^T + bh)
///   h' = (1 - z) . h + z . hcand
Tensor2 gru_cell_forward(const Tensor2& x, const Tensor2& h,
                         const GruParams& p, GruStepCache* cache = nullptr);

struct GruGrads {
  Tensor2 dWz, dWr, dWh;
  Tensor2 dUz, dUr, dUh;
  Tensor2 dbz, dbr, dbh;
};

DenseGrads zero_grads(const DenseLayer& layer);
GruGrads zero_grads(const GruParams& p);

/// Accumulates parameter gradients and returns dL/dh_prev. Pass d_x to also
/// receive dL/dx.
Tensor2 gru_cell_backward(const Tensor2& d_h_new, const GruParams& p,
                          const GruStepCache& cache, GruGrads& grads,
                          Tensor2* d_x = nullptr);

}  // namespace socnav::nn
