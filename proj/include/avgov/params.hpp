#pragma once

// Reward-schedule derivation and the safety/discount thresholds built on it.

#include "avgov/types.hpp"

namespace avgov {

struct ScheduleDiagnostics {
  double threshold_identity_residual = 0.0;  // |T - (a'+s)/(a'+s+a)|
  double inflection_residual = 0.0;          // |T*a - (1-T)*s - a'*(1-T)|
  bool a_dominates = false;                  // a >= a'
  bool epsilon_condition = false;            // 1/(1+eps) < T
  bool all_ok = false;
};

/// Builds a schedule whose honest threshold is T and whose worst honest
/// reward is a/(1+epsilon):
///
///   a = (1+eps)·a'·(1-T)
///   s = a·(T·(1+eps) - 1) / ((1-T)·(1+eps))
///
/// Throws ScheduleError when T is not in (0,1), when 1/(1+eps) >= T, when
/// a' <= 0, or (unless `require_a_dominates` is false) when the result has
/// a < a'.
RewardSchedule derive_schedule(double threshold, double epsilon, double a_prime,
                               bool require_a_dominates = true);

ScheduleDiagnostics validate_schedule(const RewardSchedule& schedule);

enum class ThresholdVariant { proof, statement };

struct SafetyEnvelope {
  double statement_branch = 0.0;
  double proof_branch = 0.0;
  double effective_threshold = 0.0;
};

/// Belief below which approving a disapproved proposal to make it win cannot
/// pay off, given a weight-normalized external reward g on that proposal.
SafetyEnvelope deviation_safety_threshold(const RewardSchedule& schedule, double external,
                                          ThresholdVariant variant = ThresholdVariant::proof);

/// Smallest delta with g_ij / w_i <= a·delta for every cell.
double external_bound_delta(const Instance& instance, const RewardSchedule& schedule);

/// Largest discount keeping (1-(1-zeta)g)/(1-(1+zeta)g) <= 1+eps. Capped at 1;
/// the usable discount must stay strictly below the returned value when it is 1.
double max_discount(double epsilon, double zeta);

}  // namespace avgov
