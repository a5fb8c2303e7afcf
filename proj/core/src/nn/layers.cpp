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

#include "socnav/nn/layers.hpp"

#include <cmath>

#include "socnav/error.hpp"

namespace socnav::nn {
namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

Tensor2 xavier(std::size_t rows, std::size_t cols, Rng& rng) {
  Tensor2 t(rows, cols);
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (double& v : t.data) v = rng.uniform(-limit, limit);
  return t;
}

void apply_activation(Tensor2& t, Activation act) {
  switch (act) {
    case Activation::kIdentity:
      break;
    case Activation::kRelu:
      for (double& v : t.data) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::kSigmoid:
      for (double& v : t.data) v = sigmoid(v);
      break;
  }
}

}  // namespace

DenseLayer make_dense(std::size_t in, std::size_t out, Activation act,
                      bool with_batchnorm, Rng& rng) {
  DenseLayer layer;
  layer.W = xavier(out, in, rng);
  layer.b = Tensor2(1, out);
  layer.activation = act;
  if (with_batchnorm) {
    BatchNorm bn;
    bn.gamma = Tensor2(1, out, 1.0);
    bn.beta = Tensor2(1, out);
    bn.running_mean = Tensor2(1, out);
    bn.running_var = Tensor2(1, out, 1.0);
    layer.batchnorm = bn;
  }
  return layer;
}

GruParams make_gru(std::size_t input, std::size_t hidden, Rng& rng) {
  GruParams p;
  p.input_size = input;
  p.hidden_size = hidden;
  p.Wz = xavier(hidden, input, rng);
  p.Wr = xavier(hidden, input, rng);
  p.Wh = xavier(hidden, input, rng);
  p.Uz = xavier(hidden, hidden, rng);
  p.Ur = xavier(hidden, hidden, rng);
  p.Uh = xavier(hidden, hidden, rng);
  p.bz = Tensor2(1, hidden);
  p.br = Tensor2(1, hidden);
  p.bh = Tensor2(1, hidden);
  return p;
}

namespace {

Tensor2 dense_forward_impl(const Tensor2& x, const DenseLayer& layer,
                           BatchNorm* mutable_bn, Mode mode,
                           DenseCache* cache) {
  if (x.cols != layer.in_size())
    throw ConfigError("dense_forward: input width mismatch");
  const std::size_t batch = x.rows;
  const std::size_t width = layer.out_size();

  Tensor2 lin = matmul_nt(x, layer.W);
  add_row_inplace(lin, layer.b);

  Tensor2 pre = lin;
  Tensor2 mu, var, xhat;
  if (layer.batchnorm) {
    const BatchNorm& bn = *layer.batchnorm;
    xhat = Tensor2(batch, width);
    if (mode == Mode::kTrain) {
      if (batch < 2)
        throw ConfigError(
            "dense_forward: train-mode batchnorm needs batch size >= 2 "
            "(variance undefined)");
      mu = Tensor2(1, width);
      var = Tensor2(1, width);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) mu.data[j] += lin(b, j);
      for (double& v : mu.data) v /= static_cast<double>(batch);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) {
          const double d = lin(b, j) - mu.data[j];
          var.data[j] += d * d;
        }
      for (double& v : var.data) v /= static_cast<double>(batch);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) {
          xhat(b, j) =
              (lin(b, j) - mu.data[j]) / std::sqrt(var.data[j] + bn.epsilon);
          pre(b, j) = bn.gamma.data[j] * xhat(b, j) + bn.beta.data[j];
        }
      if (mutable_bn != nullptr) {
        for (std::size_t j = 0; j < width; ++j) {
          mutable_bn->running_mean.data[j] =
              (1.0 - bn.momentum) * bn.running_mean.data[j] +
              bn.momentum * mu.data[j];
          mutable_bn->running_var.data[j] =
              (1.0 - bn.momentum) * bn.running_var.data[j] +
              bn.momentum * var.data[j];
        }
      }
    } else {
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) {
          xhat(b, j) = (lin(b, j) - bn.running_mean.data[j]) /
                       std::sqrt(bn.running_var.data[j] + bn.epsilon);
          pre(b, j) = bn.gamma.data[j] * xhat(b, j) + bn.beta.data[j];
        }
    }
  }

  Tensor2 out = pre;
  apply_activation(out, layer.activation);

  if (cache != nullptr) {
    cache->x = x;
    cache->lin = std::move(lin);
    cache->mu = std::move(mu);
    cache->var = std::move(var);
    cache->xhat = std::move(xhat);
    cache->pre_act = std::move(pre);
    cache->out = out;
    cache->mode = mode;
  }
  return out;
}

}  // namespace

Tensor2 dense_forward(const Tensor2& x, DenseLayer& layer, Mode mode,
                      DenseCache* cache) {
  BatchNorm* bn = layer.batchnorm ? &*layer.batchnorm : nullptr;
  return dense_forward_impl(x, layer, mode == Mode::kTrain ? bn : nullptr,
                            mode, cache);
}

Tensor2 dense_forward(const Tensor2& x, const DenseLayer& layer,
                      DenseCache* cache) {
  return dense_forward_impl(x, layer, nullptr, Mode::kInfer, cache);
}

DenseGrads zero_grads(const DenseLayer& layer) {
  DenseGrads g;
  g.dW = Tensor2::zeros_like(layer.W);
  g.db = Tensor2::zeros_like(layer.b);
  if (layer.batchnorm) {
    g.dgamma = Tensor2::zeros_like(layer.batchnorm->gamma);
    g.dbeta = Tensor2::zeros_like(layer.batchnorm->beta);
  }
  return g;
}

GruGrads zero_grads(const GruParams& p) {
  GruGrads g;
  g.dWz = Tensor2::zeros_like(p.Wz);
  g.dWr = Tensor2::zeros_like(p.Wr);
  g.dWh = Tensor2::zeros_like(p.Wh);
  g.dUz = Tensor2::zeros_like(p.Uz);
  g.dUr = Tensor2::zeros_like(p.Ur);
  g.dUh = Tensor2::zeros_like(p.Uh);
  g.dbz = Tensor2::zeros_like(p.bz);
  g.dbr = Tensor2::zeros_like(p.br);
  g.dbh = Tensor2::zeros_like(p.bh);
  return g;
}

Tensor2 dense_backward(const Tensor2& d_out, const DenseLayer& layer,
                       const DenseCache& cache, DenseGrads& grads) {
  const std::size_t batch = d_out.rows;
  const std::size_t width = layer.out_size();
  if (!d_out.same_shape(cache.out))
    throw ConfigError("dense_backward: gradient shape mismatch");

  // Through the activation.
  Tensor2 d_pre = d_out;
  switch (layer.activation) {
    case Activation::kIdentity:
      break;
    case Activation::kRelu:
      for (std::size_t i = 0; i < d_pre.data.size(); ++i)
        if (cache.pre_act.data[i] <= 0.0) d_pre.data[i] = 0.0;
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < d_pre.data.size(); ++i) {
        const double s = cache.out.data[i];
        d_pre.data[i] *= s * (1.0 - s);
      }
      break;
  }

  // Through batchnorm.
  Tensor2 d_lin;
  if (layer.batchnorm) {
    const BatchNorm& bn = *layer.batchnorm;
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t j = 0; j < width; ++j) {
        grads.dgamma.data[j] += d_pre(b, j) * cache.xhat(b, j);
        grads.dbeta.data[j] += d_pre(b, j);
      }
    Tensor2 d_xhat = d_pre;
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t j = 0; j < width; ++j)
        d_xhat(b, j) *= bn.gamma.data[j];

    if (cache.mode == Mode::kTrain) {
      // Batch statistics couple the rows.
      Tensor2 sum_dxhat(1, width);
      Tensor2 sum_dxhat_xhat(1, width);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) {
          sum_dxhat.data[j] += d_xhat(b, j);
          sum_dxhat_xhat.data[j] += d_xhat(b, j) * cache.xhat(b, j);
        }
      d_lin = Tensor2(batch, width);
      const double inv_batch = 1.0 / static_cast<double>(batch);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j) {
          const double inv_std = 1.0 / std::sqrt(cache.var.data[j] + bn.epsilon);
          d_lin(b, j) = inv_std * inv_batch *
                        (static_cast<double>(batch) * d_xhat(b, j) -
                         sum_dxhat.data[j] -
                         cache.xhat(b, j) * sum_dxhat_xhat.data[j]);
        }
    } else {
      d_lin = std::move(d_xhat);
      for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < width; ++j)
          d_lin(b, j) /= std::sqrt(bn.running_var.data[j] + bn.epsilon);
    }
  } else {
    d_lin = std::move(d_pre);
  }

  // Through the affine transform.
  add_matmul_tn(d_lin, cache.x, grads.dW);
  add_col_sums(d_lin, grads.db);
  return matmul(d_lin, layer.W);
}

Tensor2 gru_cell_forward(const Tensor2& x, const Tensor2& h,
                         const GruParams& p, GruStepCache* cache) {
  if (x.cols != p.input_size || h.cols != p.hidden_size || x.rows != h.rows)
    throw ConfigError("gru_cell_forward: dimension mismatch");
  const std::size_t batch = x.rows;
  const std::size_t hidden = p.hidden_size;

  Tensor2 z = matmul_nt(x, p.Wz);
  add_matmul_nt(h, p.Uz, z);
  add_row_inplace(z, p.bz);
  for (double& v : z.data) v = sigmoid(v);

  Tensor2 r = matmul_nt(x, p.Wr);
  add_matmul_nt(h, p.Ur, r);
  add_row_inplace(r, p.br);
  for (double& v : r.data) v = sigmoid(v);

  Tensor2 rh = r;
  hadamard_inplace(rh, h);
  Tensor2 hcand = matmul_nt(x, p.Wh);
  add_matmul_nt(rh, p.Uh, hcand);
  add_row_inplace(hcand, p.bh);
  for (double& v : hcand.data) v = std::tanh(v);

  Tensor2 h_new(batch, hidden);
  for (std::size_t i = 0; i < h_new.data.size(); ++i)
    h_new.data[i] =
        (1.0 - z.data[i]) * h.data[i] + z.data[i] * hcand.data[i];

  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = h;
    cache->z = std::move(z);
    cache->r = std::move(r);
    cache->hcand = std::move(hcand);
  }
  return h_new;
}

Tensor2 gru_cell_backward(const Tensor2& d_h_new, const GruParams& p,
                          const GruStepCache& cache, GruGrads& grads,
                          Tensor2* d_x) {
  const std::size_t n = d_h_new.data.size();
  if (!d_h_new.same_shape(cache.h_prev))
    throw ConfigError("gru_cell_backward: gradient shape mismatch");

  Tensor2 dz(d_h_new.rows, d_h_new.cols);
  Tensor2 dhc(d_h_new.rows, d_h_new.cols);
  Tensor2 d_h_prev(d_h_new.rows, d_h_new.cols);
  for (std::size_t i = 0; i < n; ++i) {
    dz.data[i] = d_h_new.data[i] * (cache.hcand.data[i] - cache.h_prev.data[i]);
    dhc.data[i] = d_h_new.data[i] * cache.z.data[i];
    d_h_prev.data[i] = d_h_new.data[i] * (1.0 - cache.z.data[i]);
  }

  // Candidate branch: dah = dhc * (1 - hcand^2).
  Tensor2 dah = std::move(dhc);
  for (std::size_t i = 0; i < n; ++i)
    dah.data[i] *= 1.0 - cache.hcand.data[i] * cache.hcand.data[i];

  Tensor2 rh = cache.r;
  hadamard_inplace(rh, cache.h_prev);
  add_matmul_tn(dah, cache.x, grads.dWh);
  add_matmul_tn(dah, rh, grads.dUh);
  add_col_sums(dah, grads.dbh);

  Tensor2 drh = matmul(dah, p.Uh);
  Tensor2 dr(d_h_new.rows, d_h_new.cols);
  for (std::size_t i = 0; i < n; ++i) {
    dr.data[i] = drh.data[i] * cache.h_prev.data[i];
    d_h_prev.data[i] += drh.data[i] * cache.r.data[i];
  }

  // Reset gate: dar = dr * r * (1 - r).
  Tensor2 dar = std::move(dr);
  for (std::size_t i = 0; i < n; ++i)
    dar.data[i] *= cache.r.data[i] * (1.0 - cache.r.data[i]);
  add_matmul_tn(dar, cache.x, grads.dWr);
  add_matmul_tn(dar, cache.h_prev, grads.dUr);
  add_col_sums(dar, grads.dbr);
  add_matmul(dar, p.Ur, d_h_prev);

  // Update gate: daz = dz * z * (1 - z).
  Tensor2 daz = std::move(dz);
  for (std::size_t i = 0; i < n; ++i)
    daz.data[i] *= cache.z.data[i] * (1.0 - cache.z.data[i]);
  add_matmul_tn(daz, cache.x, grads.dWz);
  add_matmul_tn(daz, cache.h_prev, grads.dUz);
  add_col_sums(daz, grads.dbz);
  add_matmul(daz, p.Uz, d_h_prev);

  if (d_x != nullptr) {
    *d_x = matmul(dah, p.Wh);
    add_matmul(dar, p.Wr, *d_x);
    add_matmul(daz, p.Wz, *d_x);
  }
  return d_h_prev;
}

}  // namespace socnav::nn
