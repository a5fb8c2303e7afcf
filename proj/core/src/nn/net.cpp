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

#include "socnav/nn/net.hpp"

#include "socnav/error.hpp"

namespace socnav::nn {
namespace {

Tensor2 net_forward_impl(const GruMlpNet& net, GruMlpNet* mutable_net,
                         const std::vector<Tensor2>& seq, Mode mode,
                         NetCache* cache) {
  if (seq.empty()) throw ConfigError("net_forward: empty sequence");
  const std::size_t batch = seq.front().rows;

  Tensor2 h(batch, net.gru.hidden_size);
  if (cache != nullptr) {
    cache->gru_steps.clear();
    cache->gru_steps.resize(seq.size());
    cache->dense.clear();
    cache->dense.resize(net.layers.size());
  }
  for (std::size_t t = 0; t < seq.size(); ++t) {
    GruStepCache* sc = cache != nullptr ? &cache->gru_steps[t] : nullptr;
    h = gru_cell_forward(seq[t], h, net.gru, sc);
  }
  if (cache != nullptr) cache->h_final = h;

  Tensor2 out = std::move(h);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    DenseCache* dc = cache != nullptr ? &cache->dense[l] : nullptr;
    if (mutable_net != nullptr) {
      out = dense_forward(out, mutable_net->layers[l], mode, dc);
    } else {
      out = dense_forward(out, net.layers[l], dc);
    }
  }
  if (!out.all_finite())
    throw ConfigError("net_forward: non-finite activation");
  return out;
}

}  // namespace

Tensor2 net_forward(GruMlpNet& net, const std::vector<Tensor2>& seq,
                    Mode mode, NetCache* cache) {
  return net_forward_impl(net, mode == Mode::kTrain ? &net : nullptr, seq,
                          mode, cache);
}

Tensor2 net_forward(const GruMlpNet& net, const std::vector<Tensor2>& seq,
                    NetCache* cache) {
  return net_forward_impl(net, nullptr, seq, Mode::kInfer, cache);
}

NetGrads zero_grads(const GruMlpNet& net) {
  NetGrads g;
  g.gru = zero_grads(net.gru);
  g.dense.reserve(net.layers.size());
  for (const DenseLayer& layer : net.layers) g.dense.push_back(zero_grads(layer));
  return g;
}

void net_backward(const GruMlpNet& net, const NetCache& cache,
                  const Tensor2& d_out, NetGrads& grads) {
  if (cache.dense.size() != net.layers.size() || cache.gru_steps.empty())
    throw ConfigError("net_backward: cache does not match net");

  Tensor2 d = d_out;
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    d = dense_backward(d, net.layers[l], cache.dense[l], grads.dense[l]);
  }
  // d is now dL/dh_final; unroll back through time.
  for (std::size_t t = cache.gru_steps.size(); t-- > 0;) {
    d = gru_cell_backward(d, net.gru, cache.gru_steps[t], grads.gru);
  }
}

std::vector<Tensor2*> param_refs(GruMlpNet& net) {
  std::vector<Tensor2*> refs = {&net.gru.Wz, &net.gru.Wr, &net.gru.Wh,
                                &net.gru.Uz, &net.gru.Ur, &net.gru.Uh,
                                &net.gru.bz, &net.gru.br, &net.gru.bh};
  for (DenseLayer& layer : net.layers) {
    refs.push_back(&layer.W);
    refs.push_back(&layer.b);
    if (layer.batchnorm) {
      refs.push_back(&layer.batchnorm->gamma);
      refs.push_back(&layer.batchnorm->beta);
    }
  }
  return refs;
}

std::vector<const Tensor2*> param_refs(const GruMlpNet& net) {
  std::vector<const Tensor2*> refs = {&net.gru.Wz, &net.gru.Wr, &net.gru.Wh,
                                      &net.gru.Uz, &net.gru.Ur, &net.gru.Uh,
                                      &net.gru.bz, &net.gru.br, &net.gru.bh};
  for (const DenseLayer& layer : net.layers) {
    refs.push_back(&layer.W);
    refs.push_back(&layer.b);
    if (layer.batchnorm) {
      refs.push_back(&layer.batchnorm->gamma);
      refs.push_back(&layer.batchnorm->beta);
    }
  }
  return refs;
}

std::vector<const Tensor2*> grad_refs(const NetGrads& grads) {
  std::vector<const Tensor2*> refs = {
      &grads.gru.dWz, &grads.gru.dWr, &grads.gru.dWh,
      &grads.gru.dUz, &grads.gru.dUr, &grads.gru.dUh,
      &grads.gru.dbz, &grads.gru.dbr, &grads.gru.dbh};
  for (const DenseGrads& g : grads.dense) {
    refs.push_back(&g.dW);
    refs.push_back(&g.db);
    if (!g.dgamma.empty()) {
      refs.push_back(&g.dgamma);
      refs.push_back(&g.dbeta);
    }
  }
  return refs;
}

std::vector<Tensor2*> grad_refs(NetGrads& grads) {
  std::vector<Tensor2*> refs = {
      &grads.gru.dWz, &grads.gru.dWr, &grads.gru.dWh,
      &grads.gru.dUz, &grads.gru.dUr, &grads.gru.dUh,
      &grads.gru.dbz, &grads.gru.dbr, &grads.gru.dbh};
  for (DenseGrads& g : grads.dense) {
    refs.push_back(&g.dW);
    refs.push_back(&g.db);
    if (!g.dgamma.empty()) {
      refs.push_back(&g.dgamma);
      refs.push_back(&g.dbeta);
    }
  }
  return refs;
}

bool net_finite(const GruMlpNet& net) {
  for (const Tensor2* t : param_refs(net))
    if (!t->all_finite()) return false;
  for (const DenseLayer& layer : net.layers) {
    if (layer.batchnorm &&
        (!layer.batchnorm->running_mean.all_finite() ||
         !layer.batchnorm->running_var.all_finite()))
      return false;
  }
  return true;
}

}  // namespace socnav::nn
