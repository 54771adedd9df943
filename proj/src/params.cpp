#include "avgov/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace avgov {

RewardSchedule derive_schedule(double threshold, double epsilon, double a_prime,
                               bool require_a_dominates) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ScheduleError("degenerate threshold: T must lie strictly inside (0,1), got " +
                        std::to_string(threshold));
  }
  if (!(epsilon >= 0.0)) throw ScheduleError("epsilon must be >= 0");
  if (!(1.0 / (1.0 + epsilon) < threshold)) {
    throw ScheduleError("condition 1/(epsilon+1) < T violated: 1/(1+" + std::to_string(epsilon) +
                        ") = " + std::to_string(1.0 / (1.0 + epsilon)) +
                        " >= T = " + std::to_string(threshold));
  }
  if (!(a_prime > 0.0)) throw ScheduleError("a_prime must be > 0");

  // Written as differences of products so that round inputs such as
  // (T=0.9, eps=19) stay exact: 20 - 18 instead of 20 * 0.0999...
  const double scale = 1.0 + epsilon;
  RewardSchedule out;
  out.T = threshold;
  out.epsilon = epsilon;
  out.a_prime = a_prime;
  out.a = scale * a_prime - scale * a_prime * threshold;
  out.s = out.a * (threshold * scale - 1.0) / (scale - threshold * scale);
  if (require_a_dominates && out.a < out.a_prime - kTolerance) {
    throw ScheduleError("condition a >= a' violated: (1+epsilon)(1-T) = " +
                        std::to_string(scale * (1.0 - threshold)) + " < 1");
  }
  return out;
}

ScheduleDiagnostics validate_schedule(const RewardSchedule& schedule) {
  const auto& [a, a_prime, s, T, epsilon, delta] = schedule;
  ScheduleDiagnostics d;
  const double denom = a_prime + s + a;
  d.threshold_identity_residual =
      denom != 0.0 ? std::abs(T - (a_prime + s) / denom) : std::numeric_limits<double>::infinity();
  d.inflection_residual = std::abs(T * a - (1.0 - T) * s - a_prime * (1.0 - T));
  d.a_dominates = a >= a_prime;
  d.epsilon_condition = epsilon >= 0.0 && 1.0 / (epsilon + 1.0) < T;
  d.all_ok = d.threshold_identity_residual <= kTolerance && d.inflection_residual <= kTolerance &&
             d.a_dominates && d.epsilon_condition;
  return d;
}

SafetyEnvelope deviation_safety_threshold(const RewardSchedule& schedule, double external,
                                          ThresholdVariant variant) {
  if (!(external >= 0.0)) throw ContractError("external reward must be >= 0");
  const auto& [a, a_prime, s, T, epsilon, delta] = schedule;
  const double denom = a + s + external;
  const auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };

  const double approve_both = T * (a + s) / denom;
  SafetyEnvelope env;
  env.statement_branch = clamp01((a_prime * (1.0 - T) + a) / denom);
  env.proof_branch = clamp01(std::min(approve_both, (a_prime * (1.0 - T) + s) / denom));
  env.effective_threshold = variant == ThresholdVariant::proof
                                ? env.proof_branch
                                : clamp01(std::min(approve_both, env.statement_branch));
  return env;
}

double external_bound_delta(const Instance& instance, const RewardSchedule& schedule) {
  if (!(schedule.a > 0.0)) throw ScheduleError("delta needs a > 0");
  double worst = 0.0;
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    for (std::size_t j = 0; j < instance.proposals(); ++j) {
      worst = std::max(worst, instance.normalized_external(i, j));
    }
  }
  return worst / schedule.a;
}

double max_discount(double epsilon, double zeta) {
  if (!(epsilon >= 0.0)) throw ContractError("epsilon must be >= 0");
  if (!(zeta >= 0.0 && zeta < 1.0)) throw ContractError("zeta must lie in [0,1)");
  const double denom = (1.0 + epsilon) * (1.0 + zeta) - (1.0 - zeta);
  if (epsilon == 0.0 || denom <= 0.0) return 0.0;
  return std::clamp(epsilon / denom, 0.0, 1.0);
}

}  // namespace avgov
