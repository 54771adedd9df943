#include "avgov/repeated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "avgov/params.hpp"

namespace avgov {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool draw(std::mt19937_64& rng, double probability) { return uniform01(rng) < probability; }

double discount_factor(double gamma, std::size_t t) {
  return t == 0 ? 1.0 : std::pow(gamma, static_cast<double>(t));
}

}  // namespace

void validate_world(const WorldConfig& world) {
  if (world.expertise.empty()) throw ContractError("world needs at least one expert");
  for (std::size_t i = 0; i < world.expertise.size(); ++i) {
    const double pi = world.expertise[i];
    if (!(pi >= 0.0 && pi <= 1.0)) {
      throw ContractError("expertise[" + std::to_string(i) + "] outside [0,1]");
    }
  }
  if (!(world.good_prior >= 0.0 && world.good_prior <= 1.0)) {
    throw ContractError("good_prior outside [0,1]");
  }
  if (world.proposals_per_round < 1 || world.proposals_per_round > kMaxProposals) {
    throw ContractError("proposals per round must lie in [1, " + std::to_string(kMaxProposals) +
                        "]");
  }
  if (!(world.zeta > 0.0 && world.zeta < 1.0)) throw ContractError("zeta must lie in (0,1)");
  if (!(world.gamma >= 0.0 && world.gamma < 1.0)) throw ContractError("gamma must lie in [0,1)");
  if (world.horizon < 1) throw ContractError("horizon must be >= 1");
}

double correct_fraction(std::size_t correct, std::size_t revealed) {
  if (correct > revealed) throw ContractError("more correct predictions than revealed rounds");
  if (revealed == 0) return kInitialWeight;
  return static_cast<double>(correct) / static_cast<double>(revealed);
}

double delayed_update(double weight, double omega, double zeta) {
  if (!(weight > 0.0)) throw ContractError("weight must be > 0");
  if (!(omega >= 0.0 && omega <= 1.0)) throw ContractError("omega outside [0,1]");
  if (!(zeta > 0.0 && zeta < 1.0)) throw ContractError("zeta must lie in (0,1)");
  if (weight <= omega) return std::min(omega, (1.0 + zeta) * weight);
  return std::max(omega, (1.0 - zeta) * weight);
}

std::mt19937_64 round_rng(std::uint64_t seed, std::size_t round) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(round),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(round) >> 32)};
  return std::mt19937_64(seq);
}

RoundSample sample_round(const WorldConfig& world, std::mt19937_64& rng) {
  const std::size_t n = world.expertise.size();
  const std::size_t k = world.proposals_per_round;
  RoundSample out{std::vector<bool>(k), Grid<double>(n, k, 0.0), Grid<double>(n, k, 0.0)};
  for (std::size_t j = 0; j < k; ++j) out.quality[j] = draw(rng, world.good_prior);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const bool correct = draw(rng, world.expertise[i]);
      out.beliefs(i, j) = (correct == out.quality[j]) ? 1.0 : 0.0;
    }
  }
  return out;
}

double discounted_sum(const std::vector<double>& values, double gamma) {
  double total = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) total += discount_factor(gamma, t) * values[t];
  return total;
}

RepeatedTrace run(const WorldConfig& world, const RewardSchedule& schedule, const Policy& policy) {
  validate_world(world);
  const std::size_t n = world.expertise.size();
  if (policy.deviator) {
    if (*policy.deviator >= n) throw ContractError("deviating expert out of range");
    if (policy.plan.size() < world.horizon) throw ContractError("vote plan shorter than horizon");
  }

  RepeatedTrace trace;
  trace.discount_precondition_ok = world.gamma < max_discount(schedule.epsilon, world.zeta);
  trace.discounted_realized.assign(n, 0.0);
  trace.discounted_subjective.assign(n, 0.0);
  trace.correct.assign(n, 0);
  std::vector<double> weights(n, kInitialWeight);

  for (std::size_t t = 0; t < world.horizon; ++t) {
    auto rng = round_rng(world.seed, t);
    const RoundSample sample = sample_round(world, rng);
    const Instance instance(weights, sample.beliefs, sample.external);

    VotingProfile profile = honest_profile(instance, schedule.T);
    if (policy.deviator) profile.set_mask(*policy.deviator, policy.plan[t]);
    const Outcome outcome = winner(instance, profile);

    RoundRecord record{profile, outcome.winner, std::nullopt, weights,
                       std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    if (outcome.winner) {
      const std::size_t j = *outcome.winner;
      const bool q = sample.quality[j];
      record.revealed_quality = q;
      ++trace.revealed;
      for (std::size_t i = 0; i < n; ++i) {
        const bool vote = profile.vote(i, j);
        const double p = instance.belief(i, j);
        const double g = instance.external(i, j);
        record.realized[i] = reward(vote, q, schedule, weights[i]) + (q ? g : 0.0);
        record.subjective[i] = weights[i] * expected_reward(vote, p, schedule) + p * g;
        if (vote == q) ++trace.correct[i];
      }
    }

    const double factor = discount_factor(world.gamma, t);
    for (std::size_t i = 0; i < n; ++i) {
      trace.discounted_realized[i] += factor * record.realized[i];
      trace.discounted_subjective[i] += factor * record.subjective[i];
      weights[i] = delayed_update(weights[i], correct_fraction(trace.correct[i], trace.revealed),
                                  world.zeta);
    }
    trace.rounds.push_back(std::move(record));
  }
  trace.final_weights = weights;
  return trace;
}

DeviationGap deviation_gap(const WorldConfig& world, const RewardSchedule& schedule,
                           std::size_t expert, std::size_t horizon) {
  validate_world(world);
  if (expert >= world.expertise.size()) throw ContractError("expert index out of range");
  if (horizon < 1) throw ContractError("horizon must be >= 1");
  const std::size_t k = world.proposals_per_round;
  const std::size_t plan_bits = k * horizon;
  if (plan_bits > 16 || (std::uint64_t{1} << plan_bits) > kMaxDeviationPlans) {
    throw GuardError("deviation search refused: (2^" + std::to_string(k) + ")^" +
                     std::to_string(horizon) + " plans exceed " +
                     std::to_string(kMaxDeviationPlans));
  }

  WorldConfig truncated = world;
  truncated.horizon = horizon;
  const double gamma = world.gamma;
  const double zeta = world.zeta;
  const double delta = std::max(0.0, schedule.delta);
  const double tail_factor = discount_factor(gamma, horizon);

  DeviationGap gap;
  gap.bound = (1.0 + 3.0 * schedule.epsilon) * (1.0 + delta);
  gap.discount_precondition_ok = gamma < max_discount(schedule.epsilon, zeta);

  const RepeatedTrace honest = run(truncated, schedule, Policy::honest());
  gap.honest_total = honest.discounted_subjective[expert];
  gap.honest_tail_lower = honest.final_weights[expert] * (1.0 - schedule.T) * schedule.a_prime *
                          tail_factor / (1.0 - (1.0 - zeta) * gamma);
  const double honest_bounded = gap.honest_total + gap.honest_tail_lower;

  const auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  };

  gap.best_deviation_total = -std::numeric_limits<double>::infinity();
  gap.bounded_ratio = -std::numeric_limits<double>::infinity();
  const std::uint64_t plans = std::uint64_t{1} << plan_bits;
  const VoteMask all = full_mask(k);
  std::vector<VoteMask> plan(horizon);
  for (std::uint64_t index = 0; index < plans; ++index) {
    for (std::size_t t = 0; t < horizon; ++t) {
      plan[t] = static_cast<VoteMask>((index >> (t * k)) & all);
    }
    const RepeatedTrace deviated = run(truncated, schedule, Policy::single_deviator(expert, plan));
    const double total = deviated.discounted_subjective[expert];
    const double growth = 1.0 - (1.0 + zeta) * gamma;
    const double tail = growth > 0.0 ? deviated.final_weights[expert] * (1.0 + delta) *
                                           schedule.a * tail_factor / growth
                                     : std::numeric_limits<double>::infinity();
    if (total > gap.best_deviation_total) {
      gap.best_deviation_total = total;
      gap.best_plan = plan;
    }
    gap.deviation_tail_upper = std::max(gap.deviation_tail_upper, tail);
    gap.bounded_ratio = std::max(gap.bounded_ratio, ratio(total + tail, honest_bounded));
  }
  gap.plans_searched = plans;
  gap.truncated_ratio = ratio(gap.best_deviation_total, gap.honest_total);
  return gap;
}

}  // namespace avgov
