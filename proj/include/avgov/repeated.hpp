#pragma once

// Repeated update selection with delayed reputation-weight updates.
//
// Each round draws fresh proposals, the experts vote with their current
// weights, only the winner's quality is revealed, rewards are paid and the
// weights move toward each expert's empirical rate of correct predictions by
// at most a factor (1±zeta) per round.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "avgov/core.hpp"
#include "avgov/types.hpp"

namespace avgov {

inline constexpr double kInitialWeight = 0.5;

struct WorldConfig {
  std::vector<double> expertise;  // probability each expert's signal is correct
  double good_prior = 0.5;        // probability a proposal is good
  std::size_t proposals_per_round = 2;
  double zeta = 0.05;
  double gamma = 0.0;
  std::size_t horizon = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

void validate_world(const WorldConfig& world);

/// omega = correct / revealed, or 1/2 before anything was revealed.
double correct_fraction(std::size_t correct, std::size_t revealed);

/// One delayed update: move w toward omega, capped at a factor (1±zeta).
double delayed_update(double weight, double omega, double zeta);

struct RoundSample {
  std::vector<bool> quality;  // true quality of each proposal
  Grid<double> beliefs;       // 0/1 signals
  Grid<double> external;      // all zero
};

/// Deterministic generator for round t of a run seeded with `seed`; the
/// sampled world does not depend on any votes.
std::mt19937_64 round_rng(std::uint64_t seed, std::size_t round);

RoundSample sample_round(const WorldConfig& world, std::mt19937_64& rng);

/// Everyone honest, or one expert following a fixed per-round vote plan.
struct Policy {
  std::optional<std::size_t> deviator;
  std::vector<VoteMask> plan;  // indexed by round; must cover the horizon

  static Policy honest() { return {}; }
  static Policy single_deviator(std::size_t expert, std::vector<VoteMask> plan) {
    return {expert, std::move(plan)};
  }
};

struct RoundRecord {
  VotingProfile profile;
  Winner winner;
  std::optional<bool> revealed_quality;
  std::vector<double> weights;     // w^t used for selection and payment
  std::vector<double> realized;    // weight-multiplied payout plus realized external
  std::vector<double> subjective;  // expected payout from each expert's own beliefs
};

struct RepeatedTrace {
  std::vector<RoundRecord> rounds;
  std::vector<double> final_weights;
  std::vector<double> discounted_realized;
  std::vector<double> discounted_subjective;
  std::vector<std::size_t> correct;
  std::size_t revealed = 0;
  // false when gamma >= max_discount(schedule.epsilon, zeta)
  bool discount_precondition_ok = true;
};

/// Sum of gamma^t · values[t].
double discounted_sum(const std::vector<double>& values, double gamma);

RepeatedTrace run(const WorldConfig& world, const RewardSchedule& schedule, const Policy& policy);

// Search space guard for deviation_gap: (2^k)^H plans.
inline constexpr std::uint64_t kMaxDeviationPlans = std::uint64_t{1} << 16;

struct DeviationGap {
  double honest_total = 0.0;          // discounted subjective reward over H rounds
  double best_deviation_total = 0.0;
  double truncated_ratio = 1.0;
  double honest_tail_lower = 0.0;     // analytic bound on rounds H, H+1, ...
  double deviation_tail_upper = 0.0;
  double bounded_ratio = 1.0;         // tails included
  double bound = 0.0;                 // (1+3 eps)(1+delta)
  std::vector<VoteMask> best_plan;
  std::uint64_t plans_searched = 0;
  bool discount_precondition_ok = true;
};

/// Exhaustive search over one expert's H-round vote plans with everybody
/// else honest; compares the best plan to honest play.
DeviationGap deviation_gap(const WorldConfig& world, const RewardSchedule& schedule,
                           std::size_t expert, std::size_t horizon);

}  // namespace avgov
