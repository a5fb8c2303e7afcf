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

#include "socnav/policies/orca.hpp"
#include "socnav/scenarios/scenario.hpp"
#include "socnav/sim/episode.hpp"
#include "socnav/social/combined.hpp"
#include "socnav/social/online.hpp"

namespace socnav::scenarios {

enum class PolicyKind { kOrca, kSarl, kSocSarl, kSocSarlOl };

inline policies::OrcaParams padded_crowd_params() {
  policies::OrcaParams params;
  params.safety_space = 0.1;
  return params;
}

const char* policy_name(PolicyKind policy);
PolicyKind parse_policy(const std::string& name);

struct EvalConfig {
  PolicyKind policy = PolicyKind::kOrca;
  bool online = false;  // forced on for kSocSarlOl
  double dt = 0.25;
  double goal_budget = 25.0;
  double d_c = 0.2;
  double gamma = 0.9;
  double k_s = 0.6;
  const policy::ValueNet* value_net = nullptr;   // kSarl and up
  const social::SocialNet* social_net = nullptr;  // kSocSarl and up
  social::OnlineConfig online_cfg;
  // ORCA humans keep a personal-space pad; the plain ORCA robot baseline
  // runs the method as cited, without one.
  policies::OrcaParams crowd_orca = padded_crowd_params();
  policies::OrcaParams robot_orca;
  std::size_t threads = 0;  // 0: SOCNAV_THREADS, else hardware
  bool keep_logs = false;   // retain full step logs per case
};

struct CaseResult {
  std::size_t case_index = 0;
  sim::EpisodeOutcome outcome = sim::EpisodeOutcome::kError;
  double time = 0.0;
  double r_dist = 0.0;
  std::size_t goals_reached = 0;
  std::string error_message;
  std::vector<social::UpdateEvent> updates;
  sim::EpisodeLog log;  // steps populated only with keep_logs
};

struct MetricsTable {
  std::size_t cases = 0;
  std::size_t successes = 0;
  double success = 0.0;
  double collision = 0.0;
  double timeout = 0.0;
  double error = 0.0;
  double time_mean = 0.0;    // successful cases only; 0 when none
  double r_dist_mean = 0.0;  // all cases
};

struct EvalReport {
  MetricsTable table;
  std::vector<CaseResult> cases;
};

/// Distance ratio of the robot's realized path, per completed or partial
/// leg, averaged over legs. Legs are delimited by goal events in the log;
/// `start` is the robot position before the first step.
double robot_r_dist(const sim::EpisodeLog& log, const Vec2& start);

/// Runs every case of the suite (in parallel across cases, reduced in case
/// order) and aggregates the table. Policies that need nets throw
/// ConfigError when the nets are missing.
EvalReport evaluate(const std::vector<Scenario>& suite, const EvalConfig& cfg);

/// Recomputes the table from per-case results (the reduction evaluate uses).
MetricsTable metrics_from_cases(const std::vector<CaseResult>& cases);

std::string metrics_to_text(const MetricsTable& table, const std::string& label);
std::string metrics_to_csv(const MetricsTable& table, const std::string& label);
std::string report_to_json(const EvalReport& report, const std::string& label);

}  // namespace socnav::scenarios
