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

#include "socnav/policy/action_space.hpp"

#include <cmath>
#include <numbers>

#include "socnav/error.hpp"

namespace socnav::policy {

ActionSpace build_action_space(double v_pref) {
  if (!std::isfinite(v_pref) || v_pref <= 0.0) {
    throw ConfigError("build_action_space: v_pref must be positive");
  }
  ActionSpace space;
  for (int k = 1; k <= 5; ++k) {
    space.speeds.push_back(v_pref * static_cast<double>(k) / 5.0);
  }
  for (int k = 0; k < 16; ++k) {
    space.directions.push_back(2.0 * std::numbers::pi * static_cast<double>(k) /
                               16.0);
  }
  for (double speed : space.speeds) {
    for (double direction : space.directions) {
      space.actions.push_back(sim::Action{speed, direction});
    }
  }
  return space;
}

}  // namespace socnav::policy
