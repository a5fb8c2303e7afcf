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

#include <string>

#include "socnav/sim/episode.hpp"

namespace socnav::sim {

/// Trajectory plot: agent paths, body circles at the final step, and dashed
/// social-zone circles (body radius + social_margin) around the humans.
std::string episode_log_to_svg(const EpisodeLog& log,
                               double social_margin = 0.2);

}  // namespace socnav::sim
