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

#include "socnav/social/tracklet.hpp"

#include <cmath>

#include <json.hpp>

#include "socnav/error.hpp"

namespace socnav::social {

std::optional<Tracklet> build_tracklet(const std::vector<TrackState>& history,
                                       const TrackState& current,
                                       const Vec2& commanded_velocity,
                                       const TrackletConfig& cfg) {
  if (history.size() < cfg.u) return std::nullopt;

  Tracklet tr;
  tr.states.reserve(cfg.length());
  for (std::size_t i = history.size() - cfg.u; i < history.size(); ++i) {
    tr.states.push_back(history[i]);
  }
  tr.states.push_back(current);
  for (std::size_t k = 1; k <= cfg.f + 1; ++k) {
    TrackState s;
    s.p = current.p + commanded_velocity * (cfg.dt * static_cast<double>(k));
    s.v = commanded_velocity;
    tr.states.push_back(s);
  }
  return tr;
}

Tracklet normalize_tracklet(const Tracklet& tr, const TrackletConfig& cfg,
                            const Vec2& fallback_direction) {
  if (tr.states.size() != cfg.length()) {
    throw ConfigError("normalize_tracklet: wrong tracklet length");
  }
  const TrackState& current = tr.states[cfg.u];

  Vec2 heading = current.v;
  if (heading.norm() < 1e-3) heading = fallback_direction;
  double angle = 0.0;
  if (heading.norm() > 0.0) angle = heading.angle();

  Tracklet out;
  out.states.reserve(tr.states.size());
  for (const TrackState& s : tr.states) {
    TrackState n;
    n.p = (s.p - current.p).rotated(-angle);
    n.v = s.v.rotated(-angle);
    out.states.push_back(n);
  }
  return out;
}

std::vector<nn::Tensor2> tracklets_to_sequence(
    const std::vector<Tracklet>& tracklets) {
  if (tracklets.empty()) {
    throw ConfigError("tracklets_to_sequence: empty batch");
  }
  const std::size_t length = tracklets.front().states.size();
  for (const Tracklet& tr : tracklets) {
    if (tr.states.size() != length) {
      throw ConfigError("tracklets_to_sequence: ragged tracklet lengths");
    }
  }
  std::vector<nn::Tensor2> seq(length, nn::Tensor2(tracklets.size(), 4));
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t b = 0; b < tracklets.size(); ++b) {
      const TrackState& s = tracklets[b].states[t];
      seq[t](b, 0) = s.p.x;
      seq[t](b, 1) = s.p.y;
      seq[t](b, 2) = s.v.x;
      seq[t](b, 3) = s.v.y;
    }
  }
  return seq;
}

std::string tracklet_json_line(const Tracklet& tr, std::optional<int> label,
                               std::optional<double> score) {
  nlohmann::json line;
  nlohmann::json states = nlohmann::json::array();
  for (const TrackState& s : tr.states) {
    states.push_back({s.p.x, s.p.y, s.v.x, s.v.y});
  }
  line["states"] = std::move(states);
  if (label) line["label"] = *label;
  if (score) line["score"] = *score;
  return line.dump();
}

}  // namespace socnav::social
