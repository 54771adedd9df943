#pragma once

// Mechanics of the weighted approval-voting selection rule and its rewards.

#include <cstddef>
#include <optional>
#include <vector>

#include "avgov/types.hpp"

namespace avgov {

/// Weighted approval winner. Ties go to the smallest proposal index; the
/// dummy is returned iff no proposal has positive approving weight.
Outcome winner(const Instance& instance, const VotingProfile& profile);

// Same rule over precomputed approval masses.
Winner select_winner(std::span<const double> approval_mass);

/// Weight-multiplied payout of one expert given her vote on the winner and
/// the winner's revealed quality.
double reward(bool vote, bool quality, const RewardSchedule& schedule, double weight);

/// Weight-normalized expected payout from the expert's own belief p.
double expected_reward(bool vote, double belief, const RewardSchedule& schedule);

/// Subjective expected utility of expert i (weight-normalized). Zero when the
/// winner is the dummy.
double utility(const Instance& instance, const RewardSchedule& schedule,
               const VotingProfile& profile, std::size_t expert);

// Utility of expert i once the winner is known; skips winner selection.
double utility_given_winner(const Instance& instance, const RewardSchedule& schedule,
                            std::size_t expert, bool vote_on_winner, const Winner& winner);

/// r_ij = 1 iff p_ij >= T.
VotingProfile honest_profile(const Instance& instance, double threshold);

bool honest_vote(double belief, double threshold);

/// Estimated quality: total weight of experts with p_ij >= T. Dummy -> 0.
double qual(const Instance& instance, double threshold, const Winner& proposal);

struct OptQuality {
  std::size_t proposal;  // zero-based
  double quality;
};

/// Proposal with the highest estimated quality, smallest index on ties.
OptQuality opt_quality(const Instance& instance, double threshold);

struct CurvePoint {
  double p;
  double approve;
  double disapprove;
};

/// Expected reward of both votes on an evenly spaced grid over [0,1].
std::vector<CurvePoint> reward_curve(const RewardSchedule& schedule, std::size_t samples);

}  // namespace avgov
