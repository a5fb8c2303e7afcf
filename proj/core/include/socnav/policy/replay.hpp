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

#include <cstddef>
#include <vector>

#include "socnav/rng.hpp"
#include "socnav/sim/state.hpp"

namespace socnav::policy {

/// One value-regression sample: goal-aligned features of a visited state
/// and its scalar target.
struct Experience {
  std::vector<sim::RobotHumanState> state;
  double target = 0.0;
};

/// Fixed-capacity ring; once full, the oldest entry is overwritten.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Experience e);
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Experience& at(std::size_t i) const { return entries_[i]; }

  /// k independent uniform draws, with replacement.
  std::vector<std::size_t> sample_indices(Rng& rng, std::size_t k) const;

 private:
  std::size_t capacity_;
  std::size_t cursor_ = 0;
  std::vector<Experience> entries_;
};

}  // namespace socnav::policy
