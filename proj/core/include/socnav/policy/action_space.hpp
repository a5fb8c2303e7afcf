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

#include "socnav/sim/state.hpp"

namespace socnav::policy {

/// Discrete holonomic action set: 5 speeds crossed with 16 headings.
/// `actions` is speed-major (all headings of the slowest speed first), the
/// order that breaks argmax ties.
struct ActionSpace {
  std::vector<double> speeds;      // strictly increasing, in (0, v_pref]
  std::vector<double> directions;  // 2*pi*k/16 for k = 0..15
  std::vector<sim::Action> actions;
};

/// Speeds are {0.2, 0.4, 0.6, 0.8, 1.0} * v_pref. Throws ConfigError when
/// v_pref <= 0 or not finite.
ActionSpace build_action_space(double v_pref);

}  // namespace socnav::policy
