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

#include "socnav/policies/orca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace socnav::policies {

namespace {

constexpr double kEpsilon = 1e-9;

// One-dimensional LP: optimize along the boundary line of halfplanes[index],
// subject to the earlier constraints and the speed disc. Returns false when
// that segment is empty.
bool linear_program1(const std::vector<HalfPlane>& halfplanes,
                     std::size_t index, double radius, const Vec2& opt,
                     bool direction_opt, Vec2& result) {
  const HalfPlane& line = halfplanes[index];
  const double dot = line.point.dot(line.direction);
  const double discriminant =
      dot * dot + radius * radius - line.point.norm_sq();
  if (discriminant < 0.0) return false;

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot - sqrt_disc;
  double t_right = -dot + sqrt_disc;

  for (std::size_t i = 0; i < index; ++i) {
    const double denominator = line.direction.det(halfplanes[i].direction);
    const double numerator =
        halfplanes[i].direction.det(line.point - halfplanes[i].point);
    if (std::abs(denominator) <= kEpsilon) {
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    if (opt.dot(line.direction) > 0.0) {
      result = line.point + t_right * line.direction;
    } else {
      result = line.point + t_left * line.direction;
    }
  } else {
    const double t = line.direction.dot(opt - line.point);
    if (t < t_left) {
      result = line.point + t_left * line.direction;
    } else if (t > t_right) {
      result = line.point + t_right * line.direction;
    } else {
      result = line.point + t * line.direction;
    }
  }
  return true;
}

// Two-dimensional LP over the halfplanes and the speed disc. Returns the
// number of constraints satisfied before the first failure (== size on full
// success).
std::size_t linear_program2(const std::vector<HalfPlane>& halfplanes,
                            double radius, const Vec2& opt, bool direction_opt,
                            Vec2& result) {
  if (direction_opt) {
    result = opt * radius;  // opt is a unit direction
  } else if (opt.norm_sq() > radius * radius) {
    result = opt.normalized() * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < halfplanes.size(); ++i) {
    if (halfplane_violation(halfplanes[i], result) > 0.0) {
      const Vec2 temp = result;
      if (!linear_program1(halfplanes, i, radius, opt, direction_opt,
                           result)) {
        result = temp;
        return i;
      }
    }
  }
  return halfplanes.size();
}

// Minimax fallback: starting from the first failed constraint, push the
// result to the velocity with the smallest largest violation.
void linear_program3(const std::vector<HalfPlane>& halfplanes,
                     std::size_t begin, double radius, Vec2& result) {
  double distance = 0.0;
  for (std::size_t i = begin; i < halfplanes.size(); ++i) {
    if (halfplane_violation(halfplanes[i], result) <= distance) continue;

    std::vector<HalfPlane> projected;
    projected.reserve(i);
    for (std::size_t j = 0; j < i; ++j) {
      HalfPlane line;
      const double determinant =
          halfplanes[i].direction.det(halfplanes[j].direction);
      if (std::abs(determinant) <= kEpsilon) {
        if (halfplanes[i].direction.dot(halfplanes[j].direction) > 0.0) {
          continue;  // same direction, j is redundant here
        }
        line.point = 0.5 * (halfplanes[i].point + halfplanes[j].point);
      } else {
        line.point =
            halfplanes[i].point +
            (halfplanes[j].direction.det(halfplanes[i].point -
                                         halfplanes[j].point) /
             determinant) *
                halfplanes[i].direction;
      }
      line.direction =
          (halfplanes[j].direction - halfplanes[i].direction).normalized();
      projected.push_back(line);
    }

    const Vec2 temp = result;
    if (linear_program2(projected, radius, halfplanes[i].direction.perp(),
                        true, result) < projected.size()) {
      result = temp;
    }
    distance = halfplane_violation(halfplanes[i], result);
  }
}

}  // namespace

std::vector<HalfPlane> orca_halfplanes(const AgentView& self,
                                       const std::vector<AgentView>& neighbors,
                                       const OrcaParams& params) {
  // Nearest neighbors first; index breaks ties so selection is stable.
  std::vector<std::size_t> order(neighbors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = (neighbors[a].p - self.p).norm_sq();
    const double db = (neighbors[b].p - self.p).norm_sq();
    return da != db ? da < db : a < b;
  });

  const double inv_horizon = 1.0 / params.time_horizon;
  const double inv_step = 1.0 / params.time_step;

  std::vector<HalfPlane> halfplanes;
  for (const std::size_t idx : order) {
    if (halfplanes.size() >= params.max_neighbors) break;
    const AgentView& other = neighbors[idx];
    const Vec2 rel_pos = other.p - self.p;
    if (rel_pos.norm_sq() > params.neighbor_dist * params.neighbor_dist)
      continue;

    const Vec2 rel_vel = self.v - other.v;
    const double dist_sq = rel_pos.norm_sq();
    const double combined_r = self.r + other.r + params.safety_space;
    const double combined_r_sq = combined_r * combined_r;

    HalfPlane line;
    Vec2 u;

    if (dist_sq > combined_r_sq) {
      // No current overlap; cut the velocity obstacle truncated at the
      // horizon.
      const Vec2 w = rel_vel - inv_horizon * rel_pos;
      const double w_len_sq = w.norm_sq();
      const double dot1 = w.dot(rel_pos);
      if (dot1 < 0.0 && dot1 * dot1 > combined_r_sq * w_len_sq) {
        // Project on the cut-off arc.
        const double w_len = std::sqrt(w_len_sq);
        const Vec2 unit_w = w / w_len;
        line.direction = {unit_w.y, -unit_w.x};
        u = (combined_r * inv_horizon - w_len) * unit_w;
      } else {
        // Project on the nearer leg.
        const double leg = std::sqrt(dist_sq - combined_r_sq);
        if (rel_pos.det(w) > 0.0) {
          line.direction = Vec2{rel_pos.x * leg - rel_pos.y * combined_r,
                                rel_pos.x * combined_r + rel_pos.y * leg} /
                           dist_sq;
        } else {
          line.direction = -Vec2{rel_pos.x * leg + rel_pos.y * combined_r,
                                 -rel_pos.x * combined_r + rel_pos.y * leg} /
                           dist_sq;
        }
        const double dot2 = rel_vel.dot(line.direction);
        u = dot2 * line.direction - rel_vel;
      }
    } else {
      // Already overlapping: push apart within one time step.
      const Vec2 w = rel_vel - inv_step * rel_pos;
      const double w_len = w.norm();
      const Vec2 unit_w = w_len > 0.0 ? w / w_len : Vec2{1.0, 0.0};
      line.direction = {unit_w.y, -unit_w.x};
      u = (combined_r * inv_step - w_len) * unit_w;
    }

    // Reciprocity: this agent takes half the correction.
    line.point = self.v + 0.5 * u;
    halfplanes.push_back(line);
  }
  return halfplanes;
}

Vec2 solve_velocity_lp(const std::vector<HalfPlane>& halfplanes,
                       const Vec2& preferred, double max_speed) {
  Vec2 result;
  const std::size_t fail =
      linear_program2(halfplanes, max_speed, preferred, false, result);
  if (fail < halfplanes.size()) {
    linear_program3(halfplanes, fail, max_speed, result);
  }
  return result;
}

Vec2 orca_policy(const AgentView& self, const Vec2& goal, double v_pref,
                 const std::vector<AgentView>& neighbors,
                 const OrcaParams& params) {
  const Vec2 to_goal = goal - self.p;
  const double dist = to_goal.norm();
  const double speed = std::min(v_pref, dist / params.time_step);
  Vec2 preferred = to_goal.normalized() * speed;
  if (!neighbors.empty()) preferred = preferred.rotated(1e-3);

  const std::vector<HalfPlane> halfplanes =
      orca_halfplanes(self, neighbors, params);
  return solve_velocity_lp(halfplanes, preferred, v_pref);
}

}  // namespace socnav::policies
