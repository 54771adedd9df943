#include "avgov/core.hpp"

#include <string>

namespace avgov {

Winner select_winner(std::span<const double> approval_mass) {
  Winner best;
  double best_mass = 0.0;
  for (std::size_t j = 0; j < approval_mass.size(); ++j) {
    // strict > keeps the smallest index on ties and the dummy at zero mass
    if (approval_mass[j] > best_mass) {
      best_mass = approval_mass[j];
      best = j;
    }
  }
  return best;
}

Outcome winner(const Instance& instance, const VotingProfile& profile) {
  require_matching(instance, profile);
  Outcome out;
  out.approval_mass.assign(instance.proposals(), 0.0);
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    for (std::size_t j = 0; j < instance.proposals(); ++j) {
      if (profile.vote(i, j)) out.approval_mass[j] += instance.weight(i);
    }
  }
  out.winner = select_winner(out.approval_mass);
  return out;
}

double reward(bool vote, bool quality, const RewardSchedule& schedule, double weight) {
  if (vote) return weight * (quality ? schedule.a : -schedule.s);
  return weight * (quality ? 0.0 : schedule.a_prime);
}

double expected_reward(bool vote, double belief, const RewardSchedule& schedule) {
  if (vote) return belief * schedule.a - (1.0 - belief) * schedule.s;
  return (1.0 - belief) * schedule.a_prime;
}

double utility_given_winner(const Instance& instance, const RewardSchedule& schedule,
                            std::size_t expert, bool vote_on_winner, const Winner& winner) {
  if (!winner) return 0.0;
  const double p = instance.belief(expert, *winner);
  return p * instance.normalized_external(expert, *winner) +
         expected_reward(vote_on_winner, p, schedule);
}

double utility(const Instance& instance, const RewardSchedule& schedule,
               const VotingProfile& profile, std::size_t expert) {
  if (expert >= instance.experts()) {
    throw ContractError("expert index " + std::to_string(expert) + " out of range");
  }
  const Outcome out = winner(instance, profile);
  const bool vote = out.winner && profile.vote(expert, *out.winner);
  return utility_given_winner(instance, schedule, expert, vote, out.winner);
}

bool honest_vote(double belief, double threshold) { return belief >= threshold; }

VotingProfile honest_profile(const Instance& instance, double threshold) {
  VotingProfile profile(instance.experts(), instance.proposals());
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    for (std::size_t j = 0; j < instance.proposals(); ++j) {
      profile.set_vote(i, j, honest_vote(instance.belief(i, j), threshold));
    }
  }
  return profile;
}

double qual(const Instance& instance, double threshold, const Winner& proposal) {
  if (!proposal) return 0.0;
  if (*proposal >= instance.proposals()) throw ContractError("proposal index out of range");
  double total = 0.0;
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    if (honest_vote(instance.belief(i, *proposal), threshold)) total += instance.weight(i);
  }
  return total;
}

OptQuality opt_quality(const Instance& instance, double threshold) {
  OptQuality best{0, qual(instance, threshold, 0)};
  for (std::size_t j = 1; j < instance.proposals(); ++j) {
    const double q = qual(instance, threshold, j);
    if (q > best.quality) best = {j, q};
  }
  return best;
}

std::vector<CurvePoint> reward_curve(const RewardSchedule& schedule, std::size_t samples) {
  if (samples < 2) throw ContractError("reward curve needs at least 2 samples");
  std::vector<CurvePoint> curve;
  curve.reserve(samples);
  for (std::size_t n = 0; n < samples; ++n) {
    const double p = static_cast<double>(n) / static_cast<double>(samples - 1);
    curve.push_back({p, expected_reward(true, p, schedule), expected_reward(false, p, schedule)});
  }
  return curve;
}

}  // namespace avgov
