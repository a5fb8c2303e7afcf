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

#include "socnav/policy/value_net.hpp"

#include <algorithm>
#include <cmath>

#include "nn/json_util.hpp"
#include "socnav/error.hpp"
#include "socnav/nn/serialize.hpp"

namespace socnav::policy {

namespace {

// Forward through a batchnorm-free dense stack, recording one cache per
// layer when requested.
nn::Tensor2 stack_forward(const std::vector<nn::DenseLayer>& layers,
                          const nn::Tensor2& input,
                          std::vector<nn::DenseCache>* caches) {
  nn::Tensor2 x = input;
  if (caches) caches->resize(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    x = nn::dense_forward(x, layers[i], caches ? &(*caches)[i] : nullptr);
  }
  return x;
}

nn::Tensor2 stack_backward(const std::vector<nn::DenseLayer>& layers,
                           const std::vector<nn::DenseCache>& caches,
                           const nn::Tensor2& d_out,
                           std::vector<nn::DenseGrads>& grads) {
  nn::Tensor2 d = d_out;
  for (std::size_t i = layers.size(); i-- > 0;) {
    d = nn::dense_backward(d, layers[i], caches[i], grads[i]);
  }
  return d;
}

bool feature_less(const sim::RobotHumanState& a,
                  const sim::RobotHumanState& b) {
  const auto fa = a.features();
  const auto fb = b.features();
  return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(),
                                      fb.end());
}

void append_stack_params(std::vector<nn::Tensor2*>& out,
                         std::vector<nn::DenseLayer>& layers) {
  for (nn::DenseLayer& l : layers) {
    out.push_back(&l.W);
    out.push_back(&l.b);
  }
}

}  // namespace

ValueNet make_value_net(Rng& rng) {
  ValueNet net;
  Rng embed_rng = rng.fork("embed");
  net.embed.push_back(
      nn::make_dense(sim::RobotHumanState::kFeatureCount, 64,
                     nn::Activation::kRelu, false, embed_rng));
  net.embed.push_back(nn::make_dense(64, kCrowdFeature, nn::Activation::kRelu,
                                     false, embed_rng));
  Rng att_rng = rng.fork("attention");
  net.attention.push_back(nn::make_dense(kCrowdFeature, 32,
                                         nn::Activation::kRelu, false,
                                         att_rng));
  net.attention.push_back(
      nn::make_dense(32, 1, nn::Activation::kIdentity, false, att_rng));
  Rng head_rng = rng.fork("head");
  net.head.push_back(nn::make_dense(kSelfFeatures + kCrowdFeature, 64,
                                    nn::Activation::kRelu, false, head_rng));
  net.head.push_back(
      nn::make_dense(64, 32, nn::Activation::kRelu, false, head_rng));
  net.head.push_back(
      nn::make_dense(32, 1, nn::Activation::kIdentity, false, head_rng));
  return net;
}

double value_forward(const ValueNet& net,
                     const std::vector<sim::RobotHumanState>& rh_states,
                     ValueCache* cache) {
  if (rh_states.empty()) {
    throw ConfigError("value_forward: need at least one human");
  }
  std::vector<sim::RobotHumanState> sorted = rh_states;
  std::sort(sorted.begin(), sorted.end(), feature_less);

  const std::size_t n = sorted.size();
  nn::Tensor2 x(n, sim::RobotHumanState::kFeatureCount);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = sorted[i].features();
    std::copy(f.begin(), f.end(), x.row(i));
  }

  ValueCache local;
  ValueCache& c = cache ? *cache : local;
  c.sorted = std::move(sorted);

  c.embeddings = stack_forward(net.embed, x, &c.embed);
  const nn::Tensor2 scores = stack_forward(net.attention, c.embeddings,
                                           &c.attention);

  double max_score = scores(0, 0);
  for (std::size_t i = 1; i < n; ++i) max_score = std::max(max_score, scores(i, 0));
  c.weights.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c.weights[i] = std::exp(scores(i, 0) - max_score);
    total += c.weights[i];
  }
  for (double& w : c.weights) w /= total;

  c.head_input = nn::Tensor2(1, kSelfFeatures + kCrowdFeature);
  const auto self = c.sorted[0].features();
  for (std::size_t j = 0; j < kSelfFeatures; ++j) c.head_input(0, j) = self[j];
  for (std::size_t j = 0; j < kCrowdFeature; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += c.weights[i] * c.embeddings(i, j);
    c.head_input(0, kSelfFeatures + j) = sum;
  }

  const nn::Tensor2 out = stack_forward(net.head, c.head_input, &c.head);
  return out(0, 0);
}

ValueGrads zero_grads(const ValueNet& net) {
  ValueGrads g;
  for (const nn::DenseLayer& l : net.embed) g.embed.push_back(nn::zero_grads(l));
  for (const nn::DenseLayer& l : net.attention) {
    g.attention.push_back(nn::zero_grads(l));
  }
  for (const nn::DenseLayer& l : net.head) g.head.push_back(nn::zero_grads(l));
  return g;
}

void value_backward(const ValueNet& net, const ValueCache& cache,
                    double d_value, ValueGrads& grads) {
  const std::size_t n = cache.weights.size();

  nn::Tensor2 d_out(1, 1);
  d_out(0, 0) = d_value;
  const nn::Tensor2 d_head_in =
      stack_backward(net.head, cache.head, d_out, grads.head);

  // Split off the crowd-feature part; the self part has no parameters
  // upstream.
  std::vector<double> d_crowd(kCrowdFeature);
  for (std::size_t j = 0; j < kCrowdFeature; ++j) {
    d_crowd[j] = d_head_in(0, kSelfFeatures + j);
  }

  nn::Tensor2 d_embeddings(n, kCrowdFeature);
  std::vector<double> d_weights(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < kCrowdFeature; ++j) {
      d_embeddings(i, j) = cache.weights[i] * d_crowd[j];
      d_weights[i] += cache.embeddings(i, j) * d_crowd[j];
    }
  }

  // Softmax Jacobian: dS_i = w_i * (dW_i - sum_j w_j dW_j).
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) weighted += cache.weights[i] * d_weights[i];
  nn::Tensor2 d_scores(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    d_scores(i, 0) = cache.weights[i] * (d_weights[i] - weighted);
  }

  const nn::Tensor2 d_from_attention =
      stack_backward(net.attention, cache.attention, d_scores, grads.attention);
  nn::add_inplace(d_embeddings, d_from_attention);

  stack_backward(net.embed, cache.embed, d_embeddings, grads.embed);
}

std::vector<nn::Tensor2*> param_refs(ValueNet& net) {
  std::vector<nn::Tensor2*> out;
  append_stack_params(out, net.embed);
  append_stack_params(out, net.attention);
  append_stack_params(out, net.head);
  return out;
}

std::vector<const nn::Tensor2*> param_refs(const ValueNet& net) {
  auto mutable_refs = param_refs(const_cast<ValueNet&>(net));
  return {mutable_refs.begin(), mutable_refs.end()};
}

std::vector<const nn::Tensor2*> grad_refs(const ValueGrads& grads) {
  auto mutable_refs = grad_refs(const_cast<ValueGrads&>(grads));
  return {mutable_refs.begin(), mutable_refs.end()};
}

std::vector<nn::Tensor2*> grad_refs(ValueGrads& grads) {
  std::vector<nn::Tensor2*> out;
  auto push = [&out](std::vector<nn::DenseGrads>& gs) {
    for (nn::DenseGrads& g : gs) {
      out.push_back(&g.dW);
      out.push_back(&g.db);
    }
  };
  push(grads.embed);
  push(grads.attention);
  push(grads.head);
  return out;
}

bool net_finite(const ValueNet& net) {
  for (const nn::Tensor2* t : param_refs(net)) {
    if (!t->all_finite()) return false;
  }
  return true;
}

namespace {

nlohmann::json stack_to_json(const std::vector<nn::DenseLayer>& layers) {
  nlohmann::json arr = nlohmann::json::array();
  for (const nn::DenseLayer& l : layers) arr.push_back(nn::detail::dense_to_json(l));
  return arr;
}

std::vector<nn::DenseLayer> stack_from_json(const nlohmann::json& arr) {
  std::vector<nn::DenseLayer> out;
  for (const nlohmann::json& j : arr) out.push_back(nn::detail::dense_from_json(j));
  return out;
}

}  // namespace

std::string value_net_to_json_string(const ValueNet& net,
                                     const nn::RmsPropState* optimizer) {
  if (!net_finite(net)) {
    throw DataError("value_net_to_json_string: non-finite parameters");
  }
  nlohmann::json doc;
  doc["schema_version"] = nn::kWeightSchemaVersion;
  doc["kind"] = "value_net";
  doc["embed"] = stack_to_json(net.embed);
  doc["attention"] = stack_to_json(net.attention);
  doc["head"] = stack_to_json(net.head);
  if (optimizer) doc["optimizer"] = nn::detail::rmsprop_to_json(*optimizer);
  return doc.dump(2);
}

ValueNet value_net_from_json_string(
    const std::string& text, std::optional<nn::RmsPropState>* optimizer) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.at("schema_version").get<int>() != nn::kWeightSchemaVersion) {
      throw DataError("value_net: unsupported schema version");
    }
    if (doc.at("kind").get<std::string>() != "value_net") {
      throw DataError("value_net: document kind mismatch");
    }
    ValueNet net;
    net.embed = stack_from_json(doc.at("embed"));
    net.attention = stack_from_json(doc.at("attention"));
    net.head = stack_from_json(doc.at("head"));
    if (optimizer) {
      optimizer->reset();
      if (doc.contains("optimizer")) {
        *optimizer = nn::detail::rmsprop_from_json(doc.at("optimizer"));
      }
    }
    if (!net_finite(net)) throw DataError("value_net: non-finite weights");
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("value_net: malformed document: ") + e.what());
  }
}

void save_value_net(const std::string& path, const ValueNet& net,
                    const nn::RmsPropState* optimizer) {
  nn::detail::write_text_file(path, value_net_to_json_string(net, optimizer));
}

ValueNet load_value_net(const std::string& path,
                        std::optional<nn::RmsPropState>* optimizer) {
  return value_net_from_json_string(nn::detail::read_text_file(path), optimizer);
}

}  // namespace socnav::policy
