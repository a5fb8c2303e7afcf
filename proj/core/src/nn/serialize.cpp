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

#include "socnav/nn/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "socnav/error.hpp"

namespace socnav::nn {

std::string double_to_hex(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", value);
  return buf;
}

double double_from_hex(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw DataError("double_from_hex: cannot parse \"" + text + "\"");
  }
  return value;
}

namespace detail {

nlohmann::json tensor_to_json(const Tensor2& t) {
  nlohmann::json j;
  j["rows"] = t.rows;
  j["cols"] = t.cols;
  nlohmann::json values = nlohmann::json::array();
  for (double v : t.data) {
    values.push_back(double_to_hex(v));
  }
  j["data"] = std::move(values);
  return j;
}

Tensor2 tensor_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& values = j.at("data");
  if (!values.is_array() || values.size() != rows * cols) {
    throw DataError("tensor_from_json: data length does not match shape");
  }
  Tensor2 t(rows, cols);
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    t.data[i] = double_from_hex(values[i].get<std::string>());
  }
  return t;
}

namespace {

std::string activation_name(Activation act) {
  switch (act) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kSigmoid:
      return "sigmoid";
  }
  throw ConfigError("activation_name: unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw DataError("unknown activation \"" + name + "\"");
}

}  // namespace

nlohmann::json dense_to_json(const DenseLayer& layer) {
  nlohmann::json j;
  j["W"] = tensor_to_json(layer.W);
  j["b"] = tensor_to_json(layer.b);
  j["activation"] = activation_name(layer.activation);
  if (layer.batchnorm) {
    const BatchNorm& bn = *layer.batchnorm;
    nlohmann::json jbn;
    jbn["gamma"] = tensor_to_json(bn.gamma);
    jbn["beta"] = tensor_to_json(bn.beta);
    jbn["running_mean"] = tensor_to_json(bn.running_mean);
    jbn["running_var"] = tensor_to_json(bn.running_var);
    jbn["momentum"] = double_to_hex(bn.momentum);
    jbn["epsilon"] = double_to_hex(bn.epsilon);
    j["batchnorm"] = std::move(jbn);
  }
  return j;
}

DenseLayer dense_from_json(const nlohmann::json& j) {
  DenseLayer layer;
  layer.W = tensor_from_json(j.at("W"));
  layer.b = tensor_from_json(j.at("b"));
  layer.activation = activation_from_name(j.at("activation").get<std::string>());
  if (j.contains("batchnorm")) {
    const auto& jbn = j.at("batchnorm");
    BatchNorm bn;
    bn.gamma = tensor_from_json(jbn.at("gamma"));
    bn.beta = tensor_from_json(jbn.at("beta"));
    bn.running_mean = tensor_from_json(jbn.at("running_mean"));
    bn.running_var = tensor_from_json(jbn.at("running_var"));
    bn.momentum = double_from_hex(jbn.at("momentum").get<std::string>());
    bn.epsilon = double_from_hex(jbn.at("epsilon").get<std::string>());
    layer.batchnorm = std::move(bn);
  }
  return layer;
}

nlohmann::json gru_to_json(const GruParams& gru) {
  nlohmann::json j;
  j["input_size"] = gru.input_size;
  j["hidden_size"] = gru.hidden_size;
  j["Wz"] = tensor_to_json(gru.Wz);
  j["Wr"] = tensor_to_json(gru.Wr);
  j["Wh"] = tensor_to_json(gru.Wh);
  j["Uz"] = tensor_to_json(gru.Uz);
  j["Ur"] = tensor_to_json(gru.Ur);
  j["Uh"] = tensor_to_json(gru.Uh);
  j["bz"] = tensor_to_json(gru.bz);
  j["br"] = tensor_to_json(gru.br);
  j["bh"] = tensor_to_json(gru.bh);
  return j;
}

GruParams gru_from_json(const nlohmann::json& j) {
  GruParams gru;
  gru.input_size = j.at("input_size").get<std::size_t>();
  gru.hidden_size = j.at("hidden_size").get<std::size_t>();
  gru.Wz = tensor_from_json(j.at("Wz"));
  gru.Wr = tensor_from_json(j.at("Wr"));
  gru.Wh = tensor_from_json(j.at("Wh"));
  gru.Uz = tensor_from_json(j.at("Uz"));
  gru.Ur = tensor_from_json(j.at("Ur"));
  gru.Uh = tensor_from_json(j.at("Uh"));
  gru.bz = tensor_from_json(j.at("bz"));
  gru.br = tensor_from_json(j.at("br"));
  gru.bh = tensor_from_json(j.at("bh"));
  return gru;
}

nlohmann::json rmsprop_to_json(const RmsPropState& state) {
  nlohmann::json j;
  j["learning_rate"] = double_to_hex(state.config.learning_rate);
  j["decay"] = double_to_hex(state.config.decay);
  j["epsilon"] = double_to_hex(state.config.epsilon);
  nlohmann::json slots = nlohmann::json::array();
  for (const Tensor2& t : state.mean_square) {
    slots.push_back(tensor_to_json(t));
  }
  j["mean_square"] = std::move(slots);
  return j;
}

RmsPropState rmsprop_from_json(const nlohmann::json& j) {
  RmsPropState state;
  state.config.learning_rate =
      double_from_hex(j.at("learning_rate").get<std::string>());
  state.config.decay = double_from_hex(j.at("decay").get<std::string>());
  state.config.epsilon = double_from_hex(j.at("epsilon").get<std::string>());
  for (const auto& slot : j.at("mean_square")) {
    state.mean_square.push_back(tensor_from_json(slot));
  }
  return state;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open \"" + path + "\" for reading");
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot open \"" + path + "\" for writing");
  }
  out << text;
  if (!out) {
    throw DataError("write to \"" + path + "\" failed");
  }
}

}  // namespace detail

std::string net_to_json_string(const GruMlpNet& net,
                               const RmsPropState* optimizer) {
  nlohmann::json j;
  j["schema_version"] = kWeightSchemaVersion;
  j["kind"] = "gru_mlp";
  j["gru"] = detail::gru_to_json(net.gru);
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& layer : net.layers) {
    layers.push_back(detail::dense_to_json(layer));
  }
  j["layers"] = std::move(layers);
  if (optimizer != nullptr) {
    j["optimizer"] = detail::rmsprop_to_json(*optimizer);
  }
  return j.dump(2);
}

GruMlpNet net_from_json_string(const std::string& text,
                               std::optional<RmsPropState>* optimizer) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("weight file is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kWeightSchemaVersion) {
      throw DataError("unsupported weight schema version " +
                      std::to_string(version));
    }
    if (j.at("kind").get<std::string>() != "gru_mlp") {
      throw DataError("weight file kind is not gru_mlp");
    }
    GruMlpNet net;
    net.gru = detail::gru_from_json(j.at("gru"));
    for (const auto& layer : j.at("layers")) {
      net.layers.push_back(detail::dense_from_json(layer));
    }
    if (optimizer != nullptr) {
      optimizer->reset();
      if (j.contains("optimizer")) {
        *optimizer = detail::rmsprop_from_json(j.at("optimizer"));
      }
    }
    if (!net_finite(net)) {
      throw DataError("weight file holds non-finite values");
    }
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed weight file: ") + e.what());
  }
}

void save_net(const std::string& path, const GruMlpNet& net,
              const RmsPropState* optimizer) {
  detail::write_text_file(path, net_to_json_string(net, optimizer));
}

GruMlpNet load_net(const std::string& path,
                   std::optional<RmsPropState>* optimizer) {
  return net_from_json_string(detail::read_text_file(path), optimizer);
}

}  // namespace socnav::nn
