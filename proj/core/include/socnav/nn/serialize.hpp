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

#include "socnav/nn/net.hpp"
#include "socnav/nn/rmsprop.hpp"

namespace socnav::nn {

inline constexpr int kWeightSchemaVersion = 1;

/// Doubles are stored as C hex-float strings ("%a") so a save/load cycle
/// reproduces every bit of the original value.
std::string double_to_hex(double value);
double double_from_hex(const std::string& text);

/// One JSON document holding the schema version, every tensor of the net,
/// and optionally the optimizer state so training can resume exactly.
std::string net_to_json_string(const GruMlpNet& net,
                               const RmsPropState* optimizer = nullptr);
GruMlpNet net_from_json_string(const std::string& text,
                               std::optional<RmsPropState>* optimizer = nullptr);

void save_net(const std::string& path, const GruMlpNet& net,
              const RmsPropState* optimizer = nullptr);
GruMlpNet load_net(const std::string& path,
                   std::optional<RmsPropState>* optimizer = nullptr);

}  // namespace socnav::nn
