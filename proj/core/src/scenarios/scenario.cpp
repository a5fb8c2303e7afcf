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

#include "socnav/scenarios/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

#include <json.hpp>

#include "socnav/error.hpp"
#include "socnav/rng.hpp"

namespace socnav::scenarios {

namespace {

constexpr double kCircleRadius = 4.0;
constexpr double kSquareHalf = 5.0;
constexpr double kGoalJitter = 0.5;
constexpr int kMaxPlacementTries = 1000;

bool clear_of(const Vec2& p, const sim::JointState& start, double clearance) {
  if ((p - start.robot.p).norm() < clearance) return false;
  for (const sim::HumanState& h : start.humans) {
    if ((p - h.p).norm() < clearance) return false;
  }
  return true;
}

sim::HumanState sample_human(ArenaKind arena, const sim::JointState& start,
                             const SuiteConfig& cfg, Rng& rng) {
  for (int attempt = 0; attempt < kMaxPlacementTries; ++attempt) {
    sim::HumanState h;
    if (arena == ArenaKind::kCircle) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      h.p = Vec2{std::cos(angle), std::sin(angle)} * kCircleRadius;
      h.goal = Vec2{-h.p.x + rng.uniform(-kGoalJitter, kGoalJitter),
                    -h.p.y + rng.uniform(-kGoalJitter, kGoalJitter)};
    } else {
      h.p = {rng.uniform(-kSquareHalf, kSquareHalf),
             rng.uniform(-kSquareHalf, kSquareHalf)};
      h.goal = {rng.uniform(-kSquareHalf, kSquareHalf),
                rng.uniform(-kSquareHalf, kSquareHalf)};
    }
    if (!clear_of(h.p, start, cfg.clearance)) continue;
    h.home = h.p;
    h.r = cfg.agent_radius;
    h.v_pref = cfg.v_pref;
    return h;
  }
  throw DataError("generate_suite: no clear spawn after 1000 tries");
}

nlohmann::json vec_json(const Vec2& v) {
  return nlohmann::json::array({v.x, v.y});
}

Vec2 vec_from(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <typename Enum>
Enum parse_enum(std::string_view text, const char* what,
                std::initializer_list<std::pair<std::string_view, Enum>> map) {
  for (const auto& [name, value] : map) {
    if (text == name) return value;
  }
  throw DataError(std::string("unknown ") + what + ": " + std::string(text));
}

}  // namespace

const char* arena_name(ArenaKind arena) {
  return arena == ArenaKind::kCircle ? "circle" : "square";
}

const char* crowd_name(CrowdKind crowd) {
  return crowd == CrowdKind::kOrca ? "orca" : "sf";
}

const char* course_name(CourseKind course) {
  return course == CourseKind::kShort ? "short" : "long";
}

std::vector<Vec2> build_course(CourseKind kind) {
  const double half = kind == CourseKind::kShort ? 4.0 : 4.25;
  const std::size_t legs = kind == CourseKind::kShort ? 5 : 8;
  std::vector<Vec2> course;
  course.reserve(legs);
  for (std::size_t leg = 0; leg < legs; ++leg) {
    course.push_back({leg % 2 == 0 ? half : -half, 0.0});
  }
  return course;
}

Vec2 course_start(CourseKind kind) {
  return {kind == CourseKind::kShort ? -4.0 : -4.25, 0.0};
}

std::vector<Scenario> generate_suite(const SuiteConfig& cfg) {
  if (cfg.n_cases == 0) throw ConfigError("generate_suite: zero cases");
  if (cfg.clearance <= 0.0 || cfg.agent_radius <= 0.0 || cfg.v_pref <= 0.0) {
    throw ConfigError("generate_suite: non-positive geometry");
  }

  Rng master(cfg.seed);
  Rng case_rng = master.fork("cases");

  std::vector<Scenario> suite;
  suite.reserve(cfg.n_cases);
  for (std::size_t i = 0; i < cfg.n_cases; ++i) {
    Scenario sc;
    sc.arena = cfg.arena;
    sc.crowd = cfg.crowd;
    sc.course_kind = cfg.course;
    sc.case_index = i;
    sc.suite_seed = cfg.seed;
    sc.course = build_course(cfg.course);
    sc.start.robot.p = course_start(cfg.course);
    sc.start.robot.goal = sc.course.front();
    sc.start.robot.r = cfg.agent_radius;
    sc.start.robot.v_pref = cfg.v_pref;

    Rng rng = case_rng.fork(i);
    const std::size_t n_humans = 5 + i % 6;
    for (std::size_t h = 0; h < n_humans; ++h) {
      sc.start.humans.push_back(sample_human(cfg.arena, sc.start, cfg, rng));
    }
    suite.push_back(std::move(sc));
  }
  return suite;
}

std::string suite_to_json(const std::vector<Scenario>& suite) {
  nlohmann::json cases = nlohmann::json::array();
  for (const Scenario& sc : suite) {
    nlohmann::json humans = nlohmann::json::array();
    for (const sim::HumanState& h : sc.start.humans) {
      humans.push_back({{"p", vec_json(h.p)},
                        {"goal", vec_json(h.goal)},
                        {"home", vec_json(h.home)},
                        {"r", h.r},
                        {"v_pref", h.v_pref}});
    }
    nlohmann::json course = nlohmann::json::array();
    for (const Vec2& g : sc.course) course.push_back(vec_json(g));
    cases.push_back({{"index", sc.case_index},
                     {"robot",
                      {{"p", vec_json(sc.start.robot.p)},
                       {"r", sc.start.robot.r},
                       {"v_pref", sc.start.robot.v_pref}}},
                     {"course", std::move(course)},
                     {"humans", std::move(humans)}});
  }
  const nlohmann::json doc = {
      {"suite",
       {{"arena", arena_name(suite.empty() ? ArenaKind::kCircle : suite[0].arena)},
        {"crowd", crowd_name(suite.empty() ? CrowdKind::kOrca : suite[0].crowd)},
        {"course",
         course_name(suite.empty() ? CourseKind::kShort : suite[0].course_kind)},
        {"seed", suite.empty() ? 0 : suite[0].suite_seed},
        {"cases", std::move(cases)}}}};
  return doc.dump();
}

std::vector<Scenario> suite_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("suite_from_json: ") + e.what());
  }
  try {
    const nlohmann::json& meta = doc.at("suite");
    const ArenaKind arena = parse_enum<ArenaKind>(
        meta.at("arena").get<std::string>(), "arena",
        {{"circle", ArenaKind::kCircle}, {"square", ArenaKind::kSquare}});
    const CrowdKind crowd = parse_enum<CrowdKind>(
        meta.at("crowd").get<std::string>(), "crowd",
        {{"orca", CrowdKind::kOrca}, {"sf", CrowdKind::kSf}});
    const CourseKind course = parse_enum<CourseKind>(
        meta.at("course").get<std::string>(), "course",
        {{"short", CourseKind::kShort}, {"long", CourseKind::kLong}});

    std::vector<Scenario> suite;
    for (const nlohmann::json& c : meta.at("cases")) {
      Scenario sc;
      sc.arena = arena;
      sc.crowd = crowd;
      sc.course_kind = course;
      sc.case_index = c.at("index").get<std::size_t>();
      sc.suite_seed = meta.at("seed").get<std::uint64_t>();
      sc.start.robot.p = vec_from(c.at("robot").at("p"));
      sc.start.robot.r = c.at("robot").at("r").get<double>();
      sc.start.robot.v_pref = c.at("robot").at("v_pref").get<double>();
      for (const nlohmann::json& g : c.at("course")) {
        sc.course.push_back(vec_from(g));
      }
      if (sc.course.empty()) throw DataError("suite_from_json: empty course");
      sc.start.robot.goal = sc.course.front();
      for (const nlohmann::json& h : c.at("humans")) {
        sim::HumanState human;
        human.p = vec_from(h.at("p"));
        human.goal = vec_from(h.at("goal"));
        human.home = vec_from(h.at("home"));
        human.r = h.at("r").get<double>();
        human.v_pref = h.at("v_pref").get<double>();
        sc.start.humans.push_back(human);
      }
      suite.push_back(std::move(sc));
    }
    return suite;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("suite_from_json: ") + e.what());
  }
}

}  // namespace socnav::scenarios
