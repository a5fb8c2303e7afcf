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

#include "socnav/scenarios/evaluate.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "socnav/error.hpp"
#include "socnav/policies/crowd.hpp"

namespace socnav::scenarios {

namespace {

bool event_is(const std::string& event, std::string_view kind) {
  return event.rfind(kind, 0) == 0;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SOCNAV_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<std::size_t>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

CaseResult run_case(const Scenario& sc, const EvalConfig& cfg) {
  CaseResult result;
  result.case_index = sc.case_index;

  sim::EpisodeSetup setup;
  setup.start = sc.start;
  setup.course = sc.course;
  setup.dt = cfg.dt;
  setup.goal_budget = cfg.goal_budget;

  const bool wants_social = cfg.policy == PolicyKind::kSocSarl ||
                            cfg.policy == PolicyKind::kSocSarlOl;
  const bool online = cfg.policy == PolicyKind::kSocSarlOl ||
                      (wants_social && cfg.online);

  social::SocialNet case_net;  // per-case weights when learning online
  std::unique_ptr<social::OnlineLearner> learner;
  std::unique_ptr<sim::RobotPolicy> robot;
  switch (cfg.policy) {
    case PolicyKind::kOrca:
      robot = std::make_unique<policies::OrcaRobotPolicy>(cfg.robot_orca);
      break;
    case PolicyKind::kSarl:
      if (cfg.value_net == nullptr) {
        throw ConfigError("evaluate: sarl needs a value net");
      }
      robot = std::make_unique<policy::ValuePolicy>(cfg.value_net, cfg.d_c,
                                                    cfg.gamma, cfg.dt);
      break;
    case PolicyKind::kSocSarl:
    case PolicyKind::kSocSarlOl: {
      if (cfg.value_net == nullptr || cfg.social_net == nullptr) {
        throw ConfigError("evaluate: socsarl needs value and social nets");
      }
      const social::SocialNet* net = cfg.social_net;
      if (online) {
        case_net = *cfg.social_net;
        net = &case_net;
        social::OnlineConfig online_cfg = cfg.online_cfg;
        online_cfg.tracklet.dt = cfg.dt;
        learner = std::make_unique<social::OnlineLearner>(
            &case_net, online_cfg,
            Rng(sc.suite_seed).fork("online").fork(sc.case_index));
      }
      social::CombinedPolicyConfig policy_cfg;
      policy_cfg.k_s = cfg.k_s;
      policy_cfg.tracklet = cfg.online_cfg.tracklet;
      robot = std::make_unique<social::CombinedPolicy>(
          cfg.value_net, net, policy_cfg, cfg.d_c, cfg.gamma, cfg.dt);
      break;
    }
  }

  std::unique_ptr<sim::CrowdPolicy> crowd;
  if (sc.crowd == CrowdKind::kOrca) {
    crowd = std::make_unique<policies::OrcaCrowd>(cfg.crowd_orca);
  } else {
    crowd = std::make_unique<policies::SfCrowd>(policies::SfParams{}, cfg.dt);
  }

  sim::EpisodeHooks hooks;
  if (learner) {
    hooks.on_step = [&](const sim::StepContext& ctx, sim::EpisodeStep& step) {
      const std::optional<social::UpdateEvent> event =
          learner->observe(ctx.after, step.t);
      if (event) {
        result.updates.push_back(*event);
        step.event =
            step.event.empty() ? "social_update" : step.event + "+social_update";
      }
    };
  }

  try {
    sim::EpisodeLog log = run_episode(setup, *robot, *crowd, hooks);
    result.outcome = log.outcome;
    result.time = log.total_time;
    result.goals_reached = log.goals_reached;
    result.error_message = log.error_message;
    result.r_dist = robot_r_dist(log, sc.start.robot.p);
    if (cfg.keep_logs) {
      result.log = std::move(log);
    } else {
      log.steps.clear();
      result.log = std::move(log);
    }
  } catch (const std::exception& e) {
    result.outcome = sim::EpisodeOutcome::kError;
    result.error_message = e.what();
    result.r_dist = 1.0;
  }
  return result;
}

}  // namespace

const char* policy_name(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::kOrca:
      return "orca";
    case PolicyKind::kSarl:
      return "sarl";
    case PolicyKind::kSocSarl:
      return "socsarl";
    case PolicyKind::kSocSarlOl:
      return "socsarl-ol";
  }
  return "orca";
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "orca") return PolicyKind::kOrca;
  if (name == "sarl") return PolicyKind::kSarl;
  if (name == "socsarl") return PolicyKind::kSocSarl;
  if (name == "socsarl-ol") return PolicyKind::kSocSarlOl;
  throw ConfigError("unknown policy: " + name);
}

double robot_r_dist(const sim::EpisodeLog& log, const Vec2& start) {
  std::vector<double> ratios;
  Vec2 leg_start = start;
  Vec2 prev = start;
  double d_a = 0.0;
  for (const sim::EpisodeStep& step : log.steps) {
    d_a += (step.robot.p - prev).norm();
    prev = step.robot.p;
    if (event_is(step.event, "goal") || event_is(step.event, "success")) {
      const double d_s = (step.robot.p - leg_start).norm();
      ratios.push_back(d_a < 1e-6 ? 1.0 : d_s / d_a);
      leg_start = step.robot.p;
      d_a = 0.0;
    }
  }
  if (d_a >= 1e-6) {
    ratios.push_back((prev - leg_start).norm() / d_a);
  }
  if (ratios.empty()) return 1.0;
  double sum = 0.0;
  for (double r : ratios) sum += r;
  return sum / static_cast<double>(ratios.size());
}

MetricsTable metrics_from_cases(const std::vector<CaseResult>& cases) {
  if (cases.empty()) throw ConfigError("metrics_from_cases: no cases");
  MetricsTable table;
  table.cases = cases.size();
  double time_sum = 0.0;
  double r_dist_sum = 0.0;
  std::size_t collisions = 0;
  std::size_t timeouts = 0;
  std::size_t errors = 0;
  for (const CaseResult& c : cases) {
    r_dist_sum += c.r_dist;
    switch (c.outcome) {
      case sim::EpisodeOutcome::kSuccess:
        ++table.successes;
        time_sum += c.time;
        break;
      case sim::EpisodeOutcome::kCollision:
        ++collisions;
        break;
      case sim::EpisodeOutcome::kTimeout:
        ++timeouts;
        break;
      case sim::EpisodeOutcome::kError:
        ++errors;
        break;
    }
  }
  const double n = static_cast<double>(table.cases);
  table.success = static_cast<double>(table.successes) / n;
  table.collision = static_cast<double>(collisions) / n;
  table.timeout = static_cast<double>(timeouts) / n;
  table.error = static_cast<double>(errors) / n;
  table.time_mean =
      table.successes > 0 ? time_sum / static_cast<double>(table.successes) : 0.0;
  table.r_dist_mean = r_dist_sum / n;
  return table;
}

EvalReport evaluate(const std::vector<Scenario>& suite, const EvalConfig& cfg) {
  if (suite.empty()) throw ConfigError("evaluate: empty suite");
  if (cfg.policy != PolicyKind::kOrca && cfg.value_net == nullptr) {
    throw ConfigError("evaluate: policy needs a value net");
  }
  if ((cfg.policy == PolicyKind::kSocSarl || cfg.policy == PolicyKind::kSocSarlOl) &&
      cfg.social_net == nullptr) {
    throw ConfigError("evaluate: policy needs a social net");
  }

  EvalReport report;
  report.cases.resize(suite.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&suite, &cfg, &report, &next]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= suite.size()) return;
      report.cases[i] = run_case(suite[i], cfg);
    }
  };

  const std::size_t n_threads =
      std::min(resolve_threads(cfg.threads), suite.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  report.table = metrics_from_cases(report.cases);
  return report;
}

std::string metrics_to_text(const MetricsTable& table,
                            const std::string& label) {
  char buffer[256];
  std::string out =
      "Method                Success  Collision  Timeout  Error  Time(s)  "
      "R_dist\n";
  std::snprintf(buffer, sizeof(buffer),
                "%-20s  %7.3f  %9.3f  %7.3f  %5.3f  %7.2f  %6.3f\n",
                label.c_str(), table.success, table.collision, table.timeout,
                table.error, table.time_mean, table.r_dist_mean);
  out += buffer;
  return out;
}

std::string metrics_to_csv(const MetricsTable& table,
                           const std::string& label) {
  std::ostringstream out;
  out << "label,cases,success,collision,timeout,error,time_s,r_dist\n";
  out << label << ',' << table.cases << ',' << table.success << ','
      << table.collision << ',' << table.timeout << ',' << table.error << ','
      << table.time_mean << ',' << table.r_dist_mean << '\n';
  return out.str();
}

std::string report_to_json(const EvalReport& report, const std::string& label) {
  nlohmann::json cases = nlohmann::json::array();
  for (const CaseResult& c : report.cases) {
    nlohmann::json entry = {{"index", c.case_index},
                            {"outcome", sim::outcome_name(c.outcome)},
                            {"time", c.time},
                            {"r_dist", c.r_dist},
                            {"goals_reached", c.goals_reached},
                            {"updates", c.updates.size()}};
    if (!c.error_message.empty()) entry["error"] = c.error_message;
    cases.push_back(std::move(entry));
  }
  const nlohmann::json doc = {
      {"label", label},
      {"table",
       {{"cases", report.table.cases},
        {"success", report.table.success},
        {"collision", report.table.collision},
        {"timeout", report.table.timeout},
        {"error", report.table.error},
        {"time_s", report.table.time_mean},
        {"r_dist", report.table.r_dist_mean}}},
      {"cases", std::move(cases)}};
  return doc.dump();
}

}  // namespace socnav::scenarios
