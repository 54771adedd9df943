#pragma once

// Scenario files and the built-in instances used by `avgov reproduce`.
//
// Scenario JSON:
//   {
//     "experts":  [{"weight": w, "beliefs": [p...], "external": [g...]}, ...],
//     "schedule": {"a": .., "a_prime": .., "s": .., "T": ..}      (explicit)
//               | {"T": .., "epsilon": .., "a_prime": ..},        (derivable)
//     "query":    {"mode": "strategic"|"semi", "epsilon": ..},    (optional)
//     "world":    {"expertise": [..], "good_prior": .., "k": .., (all but expertise optional)
//                  "zeta": .., "gamma": .., "horizon": .., "seed": ..},  (optional)
//     "profile":  [[0|1, ...], ...]                               (optional)
//   }
// "external" defaults to zeros and either schedule form may carry "delta".
// An explicit schedule gets the epsilon for which a = (1+eps)·a'·(1-T).

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "avgov/analysis.hpp"
#include "avgov/params.hpp"
#include "avgov/repeated.hpp"
#include "avgov/types.hpp"

namespace avgov {

struct ExplicitSchedule {
  double a, a_prime, s, T;
  std::optional<double> delta;
  friend bool operator==(const ExplicitSchedule&, const ExplicitSchedule&) = default;
};

struct DerivableSchedule {
  double T, epsilon, a_prime;
  std::optional<double> delta;
  friend bool operator==(const DerivableSchedule&, const DerivableSchedule&) = default;
};

using ScheduleInput = std::variant<ExplicitSchedule, DerivableSchedule>;

struct Scenario {
  Instance instance;
  ScheduleInput schedule_input;
  RewardSchedule schedule;  // materialized from schedule_input
  ScheduleDiagnostics diagnostics;
  EquilibriumQuery query;
  std::optional<WorldConfig> world;
  std::optional<VotingProfile> profile;
};

/// Failure while reading or validating a scenario; the message names the field.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& scenario);

/// Turns a schedule input into a validated RewardSchedule (delta checked
/// against the instance; a supplied delta below the required one is rejected).
RewardSchedule materialize_schedule(const ScheduleInput& input, const Instance& instance);

// Default schedule of the built-in instances: T = 0.9, eps = 19, a' = 1.
DerivableSchedule default_schedule_input();

/// n+1 experts, 2 proposals: a slightly heavier expert who only likes the
/// first proposal against n experts who only like the second.
Scenario builtin_prop3(std::size_t n, double slack = 0.01);

/// Three experts and two proposals without any pure equilibrium for
/// semi-strategic experts.
Scenario builtin_prop4();

/// Two experts where the heavier one is indifferent at T on proposal 1 and
/// prefers proposal 2, giving PoA 2/(1+slack).
Scenario builtin_thm6(double slack);

}  // namespace avgov
