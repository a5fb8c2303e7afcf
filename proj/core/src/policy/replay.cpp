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

#include "socnav/policy/replay.hpp"

#include "socnav/error.hpp"

namespace socnav::policy {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("ReplayBuffer: capacity must be > 0");
  entries_.reserve(capacity);
}

void ReplayBuffer::push(Experience e) {
  if (entries_.size() < capacity_) {
    entries_.push_back(std::move(e));
  } else {
    entries_[cursor_] = std::move(e);
    cursor_ = (cursor_ + 1) % capacity_;
  }
}

std::vector<std::size_t> ReplayBuffer::sample_indices(Rng& rng,
                                                      std::size_t k) const {
  if (entries_.empty()) throw ConfigError("ReplayBuffer: sample from empty");
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = static_cast<std::size_t>(rng.uniform_int(entries_.size()));
  }
  return out;
}

}  // namespace socnav::policy
