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

// Internal JSON conversion helpers shared by the weight serializers. Not
// installed; keeps the vendored json header out of the public API.

#pragma once

#include <json.hpp>

#include "socnav/nn/layers.hpp"
#include "socnav/nn/rmsprop.hpp"

namespace socnav::nn::detail {

nlohmann::json tensor_to_json(const Tensor2& t);
Tensor2 tensor_from_json(const nlohmann::json& j);

nlohmann::json dense_to_json(const DenseLayer& layer);
DenseLayer dense_from_json(const nlohmann::json& j);

nlohmann::json gru_to_json(const GruParams& gru);
GruParams gru_from_json(const nlohmann::json& j);

nlohmann::json rmsprop_to_json(const RmsPropState& state);
RmsPropState rmsprop_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace socnav::nn::detail
