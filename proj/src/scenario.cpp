#include "avgov/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace avgov {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

double number(const json& obj, const std::string& key, const std::string& path) {
  return number(member(obj, key, path), path + "." + key);
}

std::optional<double> optional_number(const json& obj, const std::string& key,
                                      const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj.at(key), path + "." + key);
}

std::uint64_t unsigned_integer(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> number_list(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number(value[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

ScheduleInput parse_schedule(const json& doc) {
  const std::string path = "schedule";
  if (!doc.is_object()) fail(path, "expected an object");
  const bool is_explicit = doc.contains("a") || doc.contains("s");
  const bool is_derivable = doc.contains("epsilon");
  if (is_explicit && is_derivable) {
    fail(path, "has both an explicit {a, a_prime, s, T} and a derivable {T, epsilon, a_prime} form");
  }
  if (is_explicit) {
    return ExplicitSchedule{number(doc, "a", path), number(doc, "a_prime", path),
                            number(doc, "s", path), number(doc, "T", path),
                            optional_number(doc, "delta", path)};
  }
  if (is_derivable) {
    return DerivableSchedule{number(doc, "T", path), number(doc, "epsilon", path),
                             number(doc, "a_prime", path), optional_number(doc, "delta", path)};
  }
  fail(path, "expected either {a, a_prime, s, T} or {T, epsilon, a_prime}");
}

json schedule_to_json(const ScheduleInput& input) {
  return std::visit(
      [](const auto& s) {
        json out;
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ExplicitSchedule>) {
          out = {{"a", s.a}, {"a_prime", s.a_prime}, {"s", s.s}, {"T", s.T}};
        } else {
          out = {{"T", s.T}, {"epsilon", s.epsilon}, {"a_prime", s.a_prime}};
        }
        if (s.delta) out["delta"] = *s.delta;
        return out;
      },
      input);
}

std::string format_residual(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

RewardSchedule materialize_schedule(const ScheduleInput& input, const Instance& instance) {
  RewardSchedule schedule;
  std::optional<double> supplied_delta;
  if (const auto* d = std::get_if<DerivableSchedule>(&input)) {
    try {
      schedule = derive_schedule(d->T, d->epsilon, d->a_prime);
    } catch (const ScheduleError& e) {
      throw ScenarioError(std::string("schedule: ") + e.what());
    }
    supplied_delta = d->delta;
  } else {
    const auto& e = std::get<ExplicitSchedule>(input);
    if (!(e.a > 0.0)) fail("schedule.a", "must be > 0");
    if (!(e.a_prime >= 0.0)) fail("schedule.a_prime", "must be >= 0");
    if (!(e.s >= 0.0)) fail("schedule.s", "must be >= 0");
    if (!(e.T > 0.0 && e.T < 1.0)) fail("schedule.T", "must lie strictly inside (0,1)");
    schedule = {e.a, e.a_prime, e.s, e.T, 0.0, 0.0};
    // Without an explicit epsilon, take the one for which the worst honest
    // reward a'(1-T) equals a/(1+eps).
    schedule.epsilon =
        e.a_prime > 0.0 ? std::max(0.0, e.a / (e.a_prime * (1.0 - e.T)) - 1.0) : 0.0;
    supplied_delta = e.delta;
  }

  const ScheduleDiagnostics diag = validate_schedule(schedule);
  if (diag.threshold_identity_residual > kTolerance || diag.inflection_residual > kTolerance) {
    fail("schedule", "T = (a'+s)/(a'+s+a) does not hold (residual " +
                         format_residual(diag.threshold_identity_residual) + ")");
  }

  double required = 0.0;
  try {
    required = external_bound_delta(instance, schedule);
  } catch (const NormalizationError& e) {
    throw ScenarioError(std::string("experts: ") + e.what());
  }
  if (supplied_delta) {
    if (!(*supplied_delta >= required - kTolerance)) {
      fail("schedule.delta", "supplied " + format_residual(*supplied_delta) +
                                 " is below the bound " + format_residual(required) +
                                 " implied by the external rewards");
    }
    schedule.delta = *supplied_delta;
  } else {
    schedule.delta = required;
  }
  return schedule;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("scenario", "expected a JSON object");

  const json& experts = member(doc, "experts", "scenario");
  if (!experts.is_array() || experts.empty()) fail("experts", "expected a non-empty array");
  std::vector<double> weights;
  std::vector<std::vector<double>> beliefs, external;
  for (std::size_t i = 0; i < experts.size(); ++i) {
    const std::string path = "experts[" + std::to_string(i) + "]";
    const json& e = experts[i];
    const double w = number(e, "weight", path);
    if (!(w >= 0.0)) fail(path + ".weight", "must be >= 0");
    weights.push_back(w);
    beliefs.push_back(number_list(member(e, "beliefs", path), path + ".beliefs"));
    if (beliefs.back().empty()) fail(path + ".beliefs", "needs at least one proposal");
    if (beliefs.back().size() != beliefs.front().size()) {
      fail(path + ".beliefs", "has " + std::to_string(beliefs.back().size()) +
                                  " entries, expected " + std::to_string(beliefs.front().size()));
    }
    for (std::size_t j = 0; j < beliefs.back().size(); ++j) {
      const double p = beliefs.back()[j];
      if (!(p >= 0.0 && p <= 1.0)) {
        fail(path + ".beliefs[" + std::to_string(j) + "]",
             "value " + format_residual(p) + " outside [0,1]");
      }
    }
    if (e.contains("external")) {
      external.push_back(number_list(e.at("external"), path + ".external"));
      if (external.back().size() != beliefs.back().size()) {
        fail(path + ".external", "length must match beliefs");
      }
      for (std::size_t j = 0; j < external.back().size(); ++j) {
        if (!(external.back()[j] >= 0.0)) {
          fail(path + ".external[" + std::to_string(j) + "]", "must be >= 0");
        }
      }
    } else {
      external.emplace_back(beliefs.back().size(), 0.0);
    }
  }

  std::optional<Instance> instance;
  try {
    instance.emplace(weights, Grid<double>::from_rows(beliefs), Grid<double>::from_rows(external));
  } catch (const ContractError& e) {
    throw ScenarioError(std::string("experts: ") + e.what());
  }

  ScheduleInput input = parse_schedule(member(doc, "schedule", "scenario"));
  RewardSchedule schedule = materialize_schedule(input, *instance);

  EquilibriumQuery query;
  if (doc.contains("query")) {
    const json& q = doc.at("query");
    if (!q.is_object()) fail("query", "expected an object");
    if (q.contains("mode")) {
      if (!q.at("mode").is_string()) fail("query.mode", "expected a string");
      try {
        query.mode = parse_mode(q.at("mode").get<std::string>());
      } catch (const ContractError& e) {
        fail("query.mode", e.what());
      }
    }
    if (q.contains("epsilon")) {
      query.epsilon = number(q.at("epsilon"), "query.epsilon");
      if (!(query.epsilon >= 0.0)) fail("query.epsilon", "must be >= 0");
    }
  }

  std::optional<WorldConfig> world;
  if (doc.contains("world")) {
    const json& w = doc.at("world");
    const std::string path = "world";
    WorldConfig cfg;
    cfg.expertise = number_list(member(w, "expertise", path), path + ".expertise");
    cfg.good_prior = optional_number(w, "good_prior", path).value_or(cfg.good_prior);
    if (w.contains("k")) cfg.proposals_per_round = unsigned_integer(w, "k", path);
    cfg.zeta = optional_number(w, "zeta", path).value_or(cfg.zeta);
    cfg.gamma = optional_number(w, "gamma", path).value_or(cfg.gamma);
    if (w.contains("horizon")) cfg.horizon = unsigned_integer(w, "horizon", path);
    if (w.contains("seed")) cfg.seed = unsigned_integer(w, "seed", path);
    try {
      validate_world(cfg);
    } catch (const ContractError& e) {
      fail(path, e.what());
    }
    world = cfg;
  }

  std::optional<VotingProfile> profile;
  if (doc.contains("profile")) {
    const json& p = doc.at("profile");
    if (!p.is_array()) fail("profile", "expected an array of vote rows");
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = "profile[" + std::to_string(i) + "]";
      if (!p[i].is_array()) fail(path, "expected an array");
      rows.emplace_back();
      for (std::size_t j = 0; j < p[i].size(); ++j) {
        const json& v = p[i][j];
        if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
          fail(path + "[" + std::to_string(j) + "]", "vote must be 0 or 1");
        }
        rows.back().push_back(v.get<int>());
      }
    }
    try {
      profile = VotingProfile::from_rows(rows);
      require_matching(*instance, *profile);
    } catch (const ContractError& e) {
      fail("profile", e.what());
    }
  }

  return Scenario{std::move(*instance), std::move(input), schedule, validate_schedule(schedule),
                  query,         world,            profile};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string() + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& scenario) {
  const Instance& inst = scenario.instance;
  json experts = json::array();
  for (std::size_t i = 0; i < inst.experts(); ++i) {
    const auto b = inst.beliefs().row(i);
    const auto g = inst.external().row(i);
    experts.push_back({{"weight", inst.weight(i)},
                       {"beliefs", std::vector<double>(b.begin(), b.end())},
                       {"external", std::vector<double>(g.begin(), g.end())}});
  }
  json doc = {{"experts", experts},
              {"schedule", schedule_to_json(scenario.schedule_input)},
              {"query",
               {{"mode", std::string(to_string(scenario.query.mode))},
                {"epsilon", scenario.query.epsilon}}}};
  if (scenario.world) {
    const WorldConfig& w = *scenario.world;
    doc["world"] = {{"expertise", w.expertise}, {"good_prior", w.good_prior},
                    {"k", w.proposals_per_round}, {"zeta", w.zeta},
                    {"gamma", w.gamma},         {"horizon", w.horizon},
                    {"seed", w.seed}};
  }
  if (scenario.profile) doc["profile"] = scenario.profile->to_rows();
  return doc;
}

DerivableSchedule default_schedule_input() { return {0.9, 19.0, 1.0, std::nullopt}; }

namespace {

Scenario make_builtin(std::vector<double> weights, std::vector<std::vector<double>> beliefs,
                      Mode mode) {
  Instance instance(std::move(weights), Grid<double>::from_rows(beliefs));
  const ScheduleInput input = default_schedule_input();
  const RewardSchedule schedule = materialize_schedule(input, instance);
  return Scenario{std::move(instance), input, schedule, validate_schedule(schedule),
                  EquilibriumQuery{mode, 0.0}, std::nullopt, std::nullopt};
}

}  // namespace

Scenario builtin_prop3(std::size_t n, double slack) {
  if (n < 1) throw ContractError("prop3 needs n >= 1");
  if (!(slack > 0.0)) throw ContractError("prop3 needs a positive slack");
  const double share = 1.0 / static_cast<double>(n);
  std::vector<double> weights{share + slack};
  std::vector<std::vector<double>> beliefs{{1.0, 0.0}};
  for (std::size_t i = 0; i < n; ++i) {
    weights.push_back(share);
    beliefs.push_back({0.0, 1.0});
  }
  return make_builtin(std::move(weights), std::move(beliefs), Mode::strategic);
}

Scenario builtin_prop4() {
  return make_builtin({0.49, 0.41, 0.10}, {{0.95, 1.0}, {1.0, 0.95}, {1.0, 0.0}},
                      Mode::semi_strategic);
}

Scenario builtin_thm6(double slack) {
  if (!(slack > 0.0 && slack < 1.0)) throw ContractError("thm6 slack must lie in (0,1)");
  const double T = default_schedule_input().T;
  return make_builtin({1.0 + slack, 1.0 - slack}, {{T, 1.0}, {1.0, 0.0}}, Mode::semi_strategic);
}

}  // namespace avgov
