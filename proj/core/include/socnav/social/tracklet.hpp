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
#include <vector>

#include "socnav/nn/tensor.hpp"
#include "socnav/vec2.hpp"

namespace socnav::social {

/// One sampled agent state on a tracklet.
struct TrackState {
  Vec2 p;
  Vec2 v;
};

/// u past states, the current state, and the current state advanced 1 + f
/// times under the chosen velocity.
struct TrackletConfig {
  std::size_t u = 11;
  std::size_t f = 3;
  double dt = 0.25;

  std::size_t length() const { return u + f + 2; }
};

struct Tracklet {
  std::vector<TrackState> states;
};

/// Assembles a tracklet from the u most recent history entries (oldest
/// first), the current state, and 1 + f constant-velocity extrapolations of
/// the commanded velocity. Returns nullopt while the history is shorter
/// than u.
std::optional<Tracklet> build_tracklet(const std::vector<TrackState>& history,
                                       const TrackState& current,
                                       const Vec2& commanded_velocity,
                                       const TrackletConfig& cfg);

/// Re-expresses the tracklet relative to its current state (index u at the
/// origin) and rotates it so the current velocity points along +x. A current
/// speed below 1e-3 m/s falls back to the given direction; a degenerate
/// fallback leaves the frame unrotated.
Tracklet normalize_tracklet(const Tracklet& tr, const TrackletConfig& cfg,
                            const Vec2& fallback_direction = {1.0, 0.0});

/// Input sequence for the classifier: length() tensors of shape
/// (batch x 4), feature order (px, py, vx, vy).
std::vector<nn::Tensor2> tracklets_to_sequence(
    const std::vector<Tracklet>& tracklets);

/// One JSON line: {"states":[[px,py,vx,vy],...],"label":...,"score":...}
/// with label/score omitted when absent.
std::string tracklet_json_line(const Tracklet& tr,
                               std::optional<int> label = std::nullopt,
                               std::optional<double> score = std::nullopt);

}  // namespace socnav::social
