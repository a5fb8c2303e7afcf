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

#include <cstdint>
#include <string>
#include <vector>

#include "socnav/sim/state.hpp"

namespace socnav::scenarios {

enum class ArenaKind { kCircle, kSquare };
enum class CrowdKind { kOrca, kSf };
enum class CourseKind { kShort, kLong };

const char* arena_name(ArenaKind arena);
const char* crowd_name(CrowdKind crowd);
const char* course_name(CourseKind course);

/// One test case: a seeded crowd placement plus the robot's goal sequence.
struct Scenario {
  ArenaKind arena = ArenaKind::kCircle;
  CrowdKind crowd = CrowdKind::kOrca;
  CourseKind course_kind = CourseKind::kShort;
  std::size_t case_index = 0;
  std::uint64_t suite_seed = 0;
  sim::JointState start;
  std::vector<Vec2> course;
};

struct SuiteConfig {
  CourseKind course = CourseKind::kShort;
  CrowdKind crowd = CrowdKind::kOrca;
  ArenaKind arena = ArenaKind::kCircle;
  std::size_t n_cases = 250;
  std::uint64_t seed = 1;
  double agent_radius = 0.3;
  double v_pref = 1.0;
  double clearance = 0.6;  // minimum center distance between spawns
};

/// Robot goal sequence: back and forth along the x axis. The short course is
/// five 8 m legs (40 m), the long one eight 8.5 m legs (68 m). The robot
/// starts at the left end.
std::vector<Vec2> build_course(CourseKind kind);
Vec2 course_start(CourseKind kind);

/// 250 seeded cases with crowd sizes cycling 5..10. Circle arenas place
/// humans on a radius-4 circle with jittered antipodal goals; square arenas
/// sample starts and goals uniformly in a 10 m square. Spawns keep the
/// configured clearance from each other and the robot; placement gives up
/// after 1000 rejections (DataError).
std::vector<Scenario> generate_suite(const SuiteConfig& cfg);

/// JSON document for a whole suite, and its inverse.
std::string suite_to_json(const std::vector<Scenario>& suite);
std::vector<Scenario> suite_from_json(const std::string& text);

}  // namespace socnav::scenarios
