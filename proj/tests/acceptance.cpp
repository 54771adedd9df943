// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "avgov/analysis.hpp"
#include "avgov/core.hpp"
#include "avgov/params.hpp"
#include "avgov/repeated.hpp"
#include "avgov/scenario.hpp"

using namespace avgov;

namespace {

// Pinned tolerances.
constexpr double kRatioTol = 1e-9;
constexpr double kResidualTol = 1e-12;
constexpr double kWeightTol = 0.05;
constexpr double kDelta = 0.1;

struct Result {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// (T, eps) pairs with 1/(1+eps) < T and a = (1+eps)(1-T)a' > a'.
const std::vector<std::pair<double, double>>& schedule_grid() {
  static const std::vector<std::pair<double, double>> grid{
      {0.6, 1.6}, {0.6, 2.0}, {0.6, 3.0},  {0.6, 5.0},  {0.75, 3.2}, {0.75, 4.0},
      {0.75, 6.0}, {0.75, 9.0}, {0.9, 10.0}, {0.9, 12.0}, {0.9, 19.0}, {0.9, 30.0}};
  return grid;
}

RewardSchedule random_schedule(std::mt19937_64& rng) {
  const auto& grid = schedule_grid();
  const auto [T, eps] = grid[pick(rng, 0, grid.size() - 1)];
  const double a_prime = std::vector<double>{0.5, 1.0, 2.0}[pick(rng, 0, 2)];
  return derive_schedule(T, eps, a_prime);
}

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k, double g_cap) {
  std::vector<double> weights(n);
  Grid<double> beliefs(n, k, 0.0), external(n, k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = uniform(rng, 0.05, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
      beliefs(i, j) = uniform(rng, 0.0, 1.0);
      external(i, j) = weights[i] * uniform(rng, 0.0, g_cap);
    }
  }
  return Instance(std::move(weights), std::move(beliefs), std::move(external));
}

Result prop4() {
  const auto start = std::chrono::steady_clock::now();
  const Scenario s = builtin_prop4();
  const auto report = enumerate_equilibria(s.instance, s.schedule, {Mode::semi_strategic, 0.0});
  const auto trace = best_response_dynamics(s.instance, s.schedule,
                                            honest_profile(s.instance, s.schedule.T),
                                            Mode::semi_strategic, 64);
  // Move order: e1 (1,1)->(0,1), e2 (1,1)->(1,0), e1 ->(1,1), e2 ->(1,1).
  const std::vector<std::tuple<std::size_t, VoteMask, VoteMask>> expected{
      {0, 0b11, 0b10}, {1, 0b11, 0b01}, {0, 0b10, 0b11}, {1, 0b01, 0b11}};
  bool order_ok = trace.path.size() == expected.size();
  for (std::size_t m = 0; order_ok && m < expected.size(); ++m) {
    const auto& [e, from, to] = expected[m];
    order_ok = trace.path[m].expert == e && trace.path[m].old_votes == from &&
               trace.path[m].new_votes == to;
  }
  const double secs = seconds_since(start);
  const bool pass = report.equilibria.empty() && trace.terminal == Terminal::cycle &&
                    trace.cycle_length == 4 && order_ok && secs < 1.0;
  return {pass, fmt("equilibria=%zu/64 cycle_length=%zu move_order=%s time=%.3fs",
                    report.equilibria.size(), trace.cycle_length, order_ok ? "match" : "differs",
                    secs)};
}

Result thm6() {
  const Scenario s = builtin_thm6(0.1);
  const auto witness = VotingProfile::from_rows({{0, 1}, {1, 0}});
  const bool is_pne = is_approx_pne(s.instance, s.schedule, witness, {Mode::semi_strategic, 0.0});
  const double quality = qual(s.instance, s.schedule.T, winner(s.instance, witness).winner);
  const auto report = enumerate_equilibria(s.instance, s.schedule, {Mode::semi_strategic, 0.0});
  const double poa = report.poa.value_or(NAN);
  const Scenario tight = builtin_thm6(0.01);
  const auto tight_report =
      enumerate_equilibria(tight.instance, tight.schedule, {Mode::semi_strategic, 0.0});
  const double tight_poa = tight_report.poa.value_or(NAN);
  const bool pass = is_pne && std::abs(quality - 1.1) <= kRatioTol &&
                    std::abs(report.opt.quality - 2.0) <= kRatioTol &&
                    std::abs(poa - 20.0 / 11.0) <= kRatioTol && tight_poa > 1.98;
  return {pass, fmt("pne=%d quality=%.12g opt=%.12g poa=%.12g (20/11) poa@0.01=%.12g", is_pne,
                    quality, report.opt.quality, poa, tight_poa)};
}

Result prop3() {
  bool pass = true;
  std::string detail;
  const double floors[] = {2.9, 3.8, 4.7};
  for (std::size_t n = 3; n <= 5; ++n) {
    const Scenario s = builtin_prop3(n, 0.01);
    const VotingProfile profile = constructive_pne(s.instance, s.schedule);
    VotingProfile single(s.instance.experts(), s.instance.proposals());
    single.set_vote(0, 0, true);
    const bool is_pne = is_approx_pne(s.instance, s.schedule, profile, {Mode::strategic, 0.0});
    const double quality = qual(s.instance, s.schedule.T, winner(s.instance, profile).winner);
    const double ratio = quality_ratio(opt_quality(s.instance, s.schedule.T).quality, quality);
    const double expected = 1.0 / (1.0 / static_cast<double>(n) + 0.01);
    const bool ok = profile == single && is_pne && std::abs(ratio - expected) <= kRatioTol &&
                    ratio >= floors[n - 3];
    pass = pass && ok;
    detail += fmt("n=%zu ratio=%.9g%s ", n, ratio, ok ? "" : "(bad)");
  }
  return {pass, detail};
}

Result theorem4_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4004);
  std::size_t failures = 0, dummy_draws = 0, dummy_failures = 0;
  for (std::size_t draw = 0; draw < 1000; ++draw) {
    const RewardSchedule schedule = random_schedule(rng);
    const Instance instance =
        random_instance(rng, pick(rng, 1, 4), pick(rng, 1, 3), schedule.a * kDelta);
    const VotingProfile honest = honest_profile(instance, schedule.T);
    const EquilibriumQuery query{Mode::semi_strategic,
                                 (1.0 + schedule.epsilon) * (1.0 + kDelta) - 1.0};
    const bool ok = is_approx_pne(instance, schedule, honest, query);
    failures += ok ? 0 : 1;
    // With the dummy winning the honest utility is 0, so no multiplicative
    // slack covers an expert whose deviation earns something positive.
    if (!winner(instance, honest).winner) {
      ++dummy_draws;
      dummy_failures += ok ? 0 : 1;
    }
  }
  const double secs = seconds_since(start);
  return {failures == 0 && secs < 30.0,
          fmt("instances=1000 failures=%zu time=%.2fs (dummy honest winner: %zu draws, %zu "
              "failures; revealed honest winner: %zu draws, %zu failures)",
              failures, secs, dummy_draws, dummy_failures, 1000 - dummy_draws,
              failures - dummy_failures)};
}

Result theorem5_suite() {
  std::mt19937_64 rng(5005);
  std::size_t checked = 0, failures = 0, equilibria = 0, rejected = 0;
  while (checked < 500) {
    const RewardSchedule schedule = random_schedule(rng);
    const Instance instance = random_instance(rng, pick(rng, 1, 4), pick(rng, 1, 3), 0.0);
    if (!safety_certificate(instance, schedule).eligible) {
      ++rejected;
      continue;
    }
    ++checked;
    const auto report =
        enumerate_equilibria(instance, schedule, {Mode::semi_strategic, schedule.epsilon});
    for (const auto& e : report.equilibria) {
      if (!e.winner) continue;
      ++equilibria;
      if (e.quality < report.opt.quality / 2.0 - kRatioTol) ++failures;
    }
  }
  return {failures == 0, fmt("instances=%zu non-dummy equilibria=%zu failures=%zu "
                             "(ineligible draws=%zu)",
                             checked, equilibria, failures, rejected)};
}

Result schedule_identities() {
  std::size_t points = 0;
  double worst = 0.0;
  for (double T = 0.55; T < 0.951; T += 0.05) {
    for (double eps : {1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 7.0, 9.0, 12.0, 19.0, 50.0}) {
      if (!(1.0 / (1.0 + eps) < T) || (1.0 + eps) * (1.0 - T) <= 1.0) continue;
      for (double a_prime : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto d = validate_schedule(derive_schedule(T, eps, a_prime));
        worst = std::max({worst, d.threshold_identity_residual, d.inflection_residual});
        ++points;
      }
    }
  }
  const RewardSchedule s = derive_schedule(0.9, 19.0, 1.0);
  const double t_identity = (s.a_prime + s.s) / (s.a_prime + s.s + s.a);
  const bool exact = s.a == 2.0 && s.s == 17.0 && t_identity == 18.0 / 20.0;
  return {points >= 200 && worst <= kResidualTol && exact,
          fmt("points=%zu worst_residual=%.3g a=%.17g s=%.17g T-identity=%.17g", points, worst,
              s.a, s.s, t_identity)};
}

Result weight_behavior() {
  WorldConfig world;
  world.expertise = {0.9, 0.6};
  world.zeta = 0.05;
  world.good_prior = 0.5;
  world.proposals_per_round = 2;
  world.horizon = 2000;
  world.seed = 7;
  const RepeatedTrace trace = run(world, derive_schedule(0.9, 19.0, 1.0), Policy::honest());
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const auto& next =
        t + 1 < trace.rounds.size() ? trace.rounds[t + 1].weights : trace.final_weights;
    for (std::size_t i = 0; i < next.size(); ++i) {
      const double w = trace.rounds[t].weights[i];
      if (next[i] > (1.0 + world.zeta) * w || next[i] < (1.0 - world.zeta) * w) ++violations;
    }
  }
  bool close = true;
  for (std::size_t i = 0; i < 2; ++i) {
    close = close && std::abs(trace.final_weights[i] - world.expertise[i]) <= kWeightTol;
  }
  return {close && violations == 0,
          fmt("w=(%.4f, %.4f) pi=(0.9, 0.6) omega=(%.4f, %.4f) bracket_violations=%zu",
              trace.final_weights[0], trace.final_weights[1],
              correct_fraction(trace.correct[0], trace.revealed),
              correct_fraction(trace.correct[1], trace.revealed), violations)};
}

Result repeated_gap() {
  const auto start = std::chrono::steady_clock::now();
  const RewardSchedule schedule = derive_schedule(0.6, 1.5, 1.0);
  WorldConfig world;
  world.expertise = {0.9, 0.75, 0.6};
  world.zeta = 0.1;
  world.proposals_per_round = 2;
  bool pass = true;
  double worst = 0.0, worst_single = 0.0;
  std::uint64_t most_plans = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    world.seed = seed;
    for (std::size_t e = 0; e < 3; ++e) {
      world.gamma = 0.9 * max_discount(schedule.epsilon, world.zeta);
      const DeviationGap gap = deviation_gap(world, schedule, e, 3);
      most_plans = std::max(most_plans, gap.plans_searched);
      worst = std::max(worst, gap.bounded_ratio);
      pass = pass && gap.discount_precondition_ok && gap.plans_searched <= 4096 &&
             gap.bounded_ratio <= gap.bound + kRatioTol;

      world.gamma = 0.0;
      const DeviationGap single = deviation_gap(world, schedule, e, 3);
      worst_single = std::max(worst_single, single.bounded_ratio);
      pass = pass && single.bounded_ratio <= (1.0 + schedule.epsilon) + kRatioTol;
    }
  }
  const double secs = seconds_since(start);
  return {pass && secs < 10.0,
          fmt("worst_ratio=%.6g bound=%.6g worst_ratio(gamma=0)=%.6g single-shot bound=%.6g "
              "plans=%llu time=%.2fs",
              worst, (1.0 + 3.0 * schedule.epsilon), worst_single, 1.0 + schedule.epsilon,
              static_cast<unsigned long long>(most_plans), secs)};
}

Result oracle_consistency() {
  std::mt19937_64 rng(9009);
  std::size_t mismatches = 0, profiles = 0;
  for (std::size_t trial = 0; trial < 50; ++trial) {
    std::size_t n = pick(rng, 1, 4), k = pick(rng, 1, 3);
    while (n * k > 12) k = pick(rng, 1, 3);
    const RewardSchedule schedule = random_schedule(rng);
    const Instance instance = random_instance(rng, n, k, schedule.a * kDelta);
    const EquilibriumQuery query{trial % 2 ? Mode::strategic : Mode::semi_strategic,
                                 trial % 3 == 0 ? 0.0 : schedule.epsilon};
    const auto report = enumerate_equilibria(instance, schedule, query);
    std::set<std::uint64_t> listed;
    for (const auto& e : report.equilibria) listed.insert(e.profile.pack());
    const std::uint64_t total = std::uint64_t{1} << (n * k);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      const bool reference = is_approx_pne(instance, schedule, VotingProfile::unpack(bits, n, k),
                                           query);
      mismatches += reference != listed.contains(bits) ? 1 : 0;
      ++profiles;
    }
  }
  return {mismatches == 0, fmt("instances=50 profiles=%zu mismatches=%zu", profiles, mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"no-equilibrium instance and 4-cycle", prop4},
      {"PoA 20/11 instance", thm6},
      {"linear strategic PoA growth", prop3},
      {"honest profile is approximate equilibrium", theorem4_suite},
      {"semi-strategic PoA at most 2", theorem5_suite},
      {"schedule identities", schedule_identities},
      {"weights track expertise", weight_behavior},
      {"repeated-game deviation bound", repeated_gap},
      {"enumeration agrees with reference check", oracle_consistency},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Result r{false, ""};
    try {
      r = criteria[c].second();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", r.pass ? "PASS" : "FAIL", c + 1, criteria[c].first,
                r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
