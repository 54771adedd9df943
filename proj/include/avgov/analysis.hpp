#pragma once

// Equilibrium analysis of the one-shot game: best responses, semi-strategic
// admissibility, (1+eps)-PNE checks, exhaustive enumeration, the
// single-approval construction, best-response dynamics and PoA/PoS.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "avgov/core.hpp"
#include "avgov/params.hpp"
#include "avgov/types.hpp"

namespace avgov {

enum class Mode { strategic, semi_strategic };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);  // "strategic" | "semi" | "semi-strategic"

struct EquilibriumQuery {
  Mode mode = Mode::semi_strategic;
  double epsilon = 0.0;
};

// Largest n·k the exhaustive enumeration accepts.
inline constexpr std::size_t kEnumerationLimit = 24;

/// Optimal vote vectors of one expert against the others' votes, ascending
/// by mask. In semi-strategic mode only admissible maximizers are kept.
std::vector<VoteMask> best_response(const Instance& instance, const RewardSchedule& schedule,
                                    const VotingProfile& profile, std::size_t expert, Mode mode);

/// Per expert: every dishonest coordinate, flipped alone to its honest value,
/// strictly lowers the expert's utility.
std::vector<bool> is_admissible(const Instance& instance, const RewardSchedule& schedule,
                                const VotingProfile& profile);

bool expert_admissible(const Instance& instance, const RewardSchedule& schedule,
                       const VotingProfile& profile, std::size_t expert);

/// No expert gains more than a factor (1+eps) from any unilateral deviation;
/// in semi-strategic mode every expert is also admissible.
bool is_approx_pne(const Instance& instance, const RewardSchedule& schedule,
                   const VotingProfile& profile, const EquilibriumQuery& query);

// Quality ratio OPT / quality. Infinite when quality is zero and OPT is
// positive, 1 when both are zero.
double quality_ratio(double opt, double quality);

struct EquilibriumEntry {
  VotingProfile profile;
  Winner winner;
  double quality = 0.0;
};

struct EquilibriumReport {
  std::vector<EquilibriumEntry> equilibria;  // ascending by packed profile bits
  OptQuality opt;
  std::optional<double> poa;  // empty when there are no equilibria; may be +inf
  std::optional<double> pos;
};

/// Every profile of the 2^(n·k) space that passes the query. Throws
/// GuardError when n·k exceeds kEnumerationLimit. `threads` = 0 picks the
/// hardware concurrency for large spaces.
EquilibriumReport enumerate_equilibria(const Instance& instance, const RewardSchedule& schedule,
                                       const EquilibriumQuery& query, unsigned threads = 0);

/// Single-approval equilibrium for strategic experts: the heaviest expert
/// that profits from being the sole approver approves her best proposal and
/// everyone else votes no. All-zero when nobody profits.
VotingProfile constructive_pne(const Instance& instance, const RewardSchedule& schedule);

struct DynamicsStep {
  std::size_t expert;
  VoteMask old_votes;
  VoteMask new_votes;
  Winner winner;  // after the move
};

enum class Terminal { fixed_point, cycle, step_limit };

struct DynamicsTrace {
  VotingProfile start;
  std::vector<DynamicsStep> path;
  Terminal terminal = Terminal::step_limit;
  std::size_t cycle_length = 0;  // set when terminal == cycle
};

std::string_view to_string(Terminal terminal);

/// Repeatedly lets the lowest-index expert whose votes are not a best
/// response switch to the lowest-mask best response.
DynamicsTrace best_response_dynamics(const Instance& instance, const RewardSchedule& schedule,
                                     const VotingProfile& start, Mode mode,
                                     std::size_t max_steps);

struct Certificate {
  Grid<std::uint8_t> safe;  // p_ij below the deviation safety threshold
  bool eligible = false;    // every p_ij < T is safe
};

Certificate safety_certificate(const Instance& instance, const RewardSchedule& schedule,
                               ThresholdVariant variant = ThresholdVariant::proof);

}  // namespace avgov
