#include "avgov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <string>
#include <thread>

namespace avgov {

std::string_view to_string(Mode mode) {
  return mode == Mode::strategic ? "strategic" : "semi";
}

Mode parse_mode(std::string_view text) {
  if (text == "strategic") return Mode::strategic;
  if (text == "semi" || text == "semi-strategic" || text == "semi_strategic") {
    return Mode::semi_strategic;
  }
  throw ContractError("unknown mode '" + std::string(text) + "' (expected strategic|semi)");
}

std::string_view to_string(Terminal terminal) {
  switch (terminal) {
    case Terminal::fixed_point:
      return "fixed-point";
    case Terminal::cycle:
      return "cycle";
    case Terminal::step_limit:
      return "step-limit";
  }
  return "unknown";
}

namespace {

// Utilities of one expert for every alternative vote mask, others fixed.
//
// Approval masses are accumulated in expert order, exactly as core::winner
// does, so ties resolve identically on both paths.
class DeviationTable {
 public:
  DeviationTable(const Instance& instance, const RewardSchedule& schedule,
                 const VotingProfile& profile, std::size_t expert)
      : k_(instance.proposals()), utilities_(std::size_t{1} << k_) {
    std::vector<double> mass_on(k_), mass_off(k_);
    for (std::size_t j = 0; j < k_; ++j) {
      double m = 0.0;
      for (std::size_t i = 0; i < expert; ++i) {
        if (profile.vote(i, j)) m += instance.weight(i);
      }
      double on = m + instance.weight(expert);
      double off = m;
      for (std::size_t i = expert + 1; i < instance.experts(); ++i) {
        if (profile.vote(i, j)) {
          on += instance.weight(i);
          off += instance.weight(i);
        }
      }
      mass_on[j] = on;
      mass_off[j] = off;
    }
    std::vector<double> mass(k_);
    for (VoteMask m = 0; m < utilities_.size(); ++m) {
      for (std::size_t j = 0; j < k_; ++j) mass[j] = (m >> j) & 1U ? mass_on[j] : mass_off[j];
      const Winner w = select_winner(mass);
      const bool vote = w && ((m >> *w) & 1U);
      utilities_[m] = utility_given_winner(instance, schedule, expert, vote, w);
    }
    for (std::size_t j = 0; j < k_; ++j) {
      if (honest_vote(instance.belief(expert, j), schedule.T)) honest_ |= VoteMask{1} << j;
    }
  }

  double utility(VoteMask m) const { return utilities_[m]; }
  std::size_t size() const { return utilities_.size(); }

  double best() const { return *std::max_element(utilities_.begin(), utilities_.end()); }

  // Every dishonest bit of m, flipped alone, strictly lowers utility.
  bool admissible(VoteMask m) const {
    VoteMask dishonest = m ^ honest_;
    for (std::size_t j = 0; j < k_; ++j) {
      const VoteMask bit = VoteMask{1} << j;
      if ((dishonest & bit) && !(utilities_[m ^ bit] < utilities_[m] - kTolerance)) return false;
    }
    return true;
  }

  bool approx_best(VoteMask m, double epsilon) const {
    return (1.0 + epsilon) * utilities_[m] + kTolerance >= best();
  }

 private:
  std::size_t k_;
  std::vector<double> utilities_;
  VoteMask honest_ = 0;
};

void require_expert(const Instance& instance, std::size_t expert) {
  if (expert >= instance.experts()) {
    throw ContractError("expert index " + std::to_string(expert) + " out of range");
  }
}

}  // namespace

std::vector<VoteMask> best_response(const Instance& instance, const RewardSchedule& schedule,
                                    const VotingProfile& profile, std::size_t expert, Mode mode) {
  require_matching(instance, profile);
  require_expert(instance, expert);
  const DeviationTable table(instance, schedule, profile, expert);
  const double best = table.best();
  std::vector<VoteMask> out;
  for (VoteMask m = 0; m < table.size(); ++m) {
    if (table.utility(m) < best - kTolerance) continue;
    if (mode == Mode::semi_strategic && !table.admissible(m)) continue;
    out.push_back(m);
  }
  return out;
}

bool expert_admissible(const Instance& instance, const RewardSchedule& schedule,
                       const VotingProfile& profile, std::size_t expert) {
  require_matching(instance, profile);
  require_expert(instance, expert);
  const double current = utility(instance, schedule, profile, expert);
  for (std::size_t j = 0; j < instance.proposals(); ++j) {
    const bool honest = honest_vote(instance.belief(expert, j), schedule.T);
    if (profile.vote(expert, j) == honest) continue;
    VotingProfile flipped = profile;
    flipped.set_vote(expert, j, honest);
    if (!(utility(instance, schedule, flipped, expert) < current - kTolerance)) return false;
  }
  return true;
}

std::vector<bool> is_admissible(const Instance& instance, const RewardSchedule& schedule,
                                const VotingProfile& profile) {
  std::vector<bool> out(instance.experts());
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    out[i] = expert_admissible(instance, schedule, profile, i);
  }
  return out;
}

// Reference route: every deviation re-evaluated through core::utility on a
// modified copy of the profile.
bool is_approx_pne(const Instance& instance, const RewardSchedule& schedule,
                   const VotingProfile& profile, const EquilibriumQuery& query) {
  require_matching(instance, profile);
  const VoteMask alternatives = full_mask(instance.proposals());
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    const double current = utility(instance, schedule, profile, i);
    VotingProfile deviated = profile;
    for (VoteMask m = 0;; ++m) {
      deviated.set_mask(i, m);
      if ((1.0 + query.epsilon) * current + kTolerance < utility(instance, schedule, deviated, i)) {
        return false;
      }
      if (m == alternatives) break;
    }
    if (query.mode == Mode::semi_strategic && !expert_admissible(instance, schedule, profile, i)) {
      return false;
    }
  }
  return true;
}

double quality_ratio(double opt, double quality) {
  if (quality > 0.0) return opt / quality;
  return opt > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

namespace {

std::vector<EquilibriumEntry> scan_range(const Instance& instance, const RewardSchedule& schedule,
                                         const EquilibriumQuery& query, std::uint64_t begin,
                                         std::uint64_t end) {
  const std::size_t n = instance.experts();
  const std::size_t k = instance.proposals();
  std::vector<EquilibriumEntry> found;
  for (std::uint64_t bits = begin; bits < end; ++bits) {
    const VotingProfile profile = VotingProfile::unpack(bits, n, k);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const DeviationTable table(instance, schedule, profile, i);
      const VoteMask own = profile.mask(i);
      ok = table.approx_best(own, query.epsilon) &&
           (query.mode == Mode::strategic || table.admissible(own));
    }
    if (!ok) continue;
    const Outcome out = winner(instance, profile);
    found.push_back({profile, out.winner, qual(instance, schedule.T, out.winner)});
  }
  return found;
}

}  // namespace

EquilibriumReport enumerate_equilibria(const Instance& instance, const RewardSchedule& schedule,
                                       const EquilibriumQuery& query, unsigned threads) {
  const std::size_t cells = instance.experts() * instance.proposals();
  if (cells > kEnumerationLimit) {
    throw GuardError("enumeration refused: n*k = " + std::to_string(cells) + " exceeds " +
                     std::to_string(kEnumerationLimit));
  }
  if (!(query.epsilon >= 0.0)) throw ContractError("epsilon must be >= 0");

  const std::uint64_t total = std::uint64_t{1} << cells;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (total < (std::uint64_t{1} << 14)) threads = 1;

  EquilibriumReport report;
  if (threads == 1) {
    report.equilibria = scan_range(instance, schedule, query, 0, total);
  } else {
    // Chunks are merged in range order, so the result stays sorted by bits.
    std::vector<std::future<std::vector<EquilibriumEntry>>> parts;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (std::uint64_t begin = 0; begin < total; begin += chunk) {
      const std::uint64_t end = std::min(total, begin + chunk);
      parts.push_back(std::async(std::launch::async, scan_range, std::cref(instance),
                                 std::cref(schedule), std::cref(query), begin, end));
    }
    for (auto& part : parts) {
      auto chunk_result = part.get();
      report.equilibria.insert(report.equilibria.end(),
                               std::make_move_iterator(chunk_result.begin()),
                               std::make_move_iterator(chunk_result.end()));
    }
  }

  report.opt = opt_quality(instance, schedule.T);
  if (!report.equilibria.empty()) {
    const auto [worst, best] = std::minmax_element(
        report.equilibria.begin(), report.equilibria.end(),
        [](const EquilibriumEntry& x, const EquilibriumEntry& y) { return x.quality < y.quality; });
    report.poa = quality_ratio(report.opt.quality, worst->quality);
    report.pos = quality_ratio(report.opt.quality, best->quality);
  }
  return report;
}

VotingProfile constructive_pne(const Instance& instance, const RewardSchedule& schedule) {
  const std::size_t n = instance.experts();
  const std::size_t k = instance.proposals();

  // Utility of expert i when she alone approves j.
  const auto solo = [&](std::size_t i, std::size_t j) {
    VotingProfile r(n, k);
    r.set_vote(i, j, true);
    return utility(instance, schedule, r, i);
  };

  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    bool profits = false;
    for (std::size_t j = 0; j < k && !profits; ++j) profits = solo(i, j) > kTolerance;
    if (profits && (!chosen || instance.weight(i) > instance.weight(*chosen))) chosen = i;
  }

  VotingProfile out(n, k);
  if (!chosen) return out;

  std::size_t best_j = 0;
  double best_u = solo(*chosen, 0);
  for (std::size_t j = 1; j < k; ++j) {
    const double u = solo(*chosen, j);
    if (u > best_u + kTolerance) {
      best_u = u;
      best_j = j;
    }
  }
  out.set_vote(*chosen, best_j, true);
  return out;
}

DynamicsTrace best_response_dynamics(const Instance& instance, const RewardSchedule& schedule,
                                     const VotingProfile& start, Mode mode,
                                     std::size_t max_steps) {
  require_matching(instance, start);
  if (max_steps < 1) throw ContractError("max_steps must be >= 1");

  DynamicsTrace trace;
  trace.start = start;
  VotingProfile state = start;
  std::map<VotingProfile, std::size_t> seen{{state, 0}};

  while (trace.path.size() < max_steps) {
    std::optional<DynamicsStep> move;
    for (std::size_t i = 0; i < instance.experts() && !move; ++i) {
      const auto responses = best_response(instance, schedule, state, i, mode);
      if (std::find(responses.begin(), responses.end(), state.mask(i)) != responses.end()) {
        continue;
      }
      move = DynamicsStep{i, state.mask(i), responses.front(), std::nullopt};
    }
    if (!move) {
      trace.terminal = Terminal::fixed_point;
      return trace;
    }
    state.set_mask(move->expert, move->new_votes);
    move->winner = winner(instance, state).winner;
    trace.path.push_back(*move);

    const auto [it, inserted] = seen.emplace(state, trace.path.size());
    if (!inserted) {
      trace.terminal = Terminal::cycle;
      trace.cycle_length = trace.path.size() - it->second;
      return trace;
    }
  }
  trace.terminal = Terminal::step_limit;
  return trace;
}

Certificate safety_certificate(const Instance& instance, const RewardSchedule& schedule,
                               ThresholdVariant variant) {
  Certificate cert{Grid<std::uint8_t>(instance.experts(), instance.proposals(), 0), true};
  for (std::size_t i = 0; i < instance.experts(); ++i) {
    for (std::size_t j = 0; j < instance.proposals(); ++j) {
      const double g = instance.normalized_external(i, j);
      const double p = instance.belief(i, j);
      const bool safe = p < deviation_safety_threshold(schedule, g, variant).effective_threshold;
      cert.safe(i, j) = safe ? 1 : 0;
      if (p < schedule.T && !safe) cert.eligible = false;
    }
  }
  return cert;
}

}  // namespace avgov
