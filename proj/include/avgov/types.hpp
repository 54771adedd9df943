#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace avgov {

// Absolute tolerance for utility comparisons and identity residuals.
inline constexpr double kTolerance = 1e-9;

// Largest proposal count a vote mask can hold.
inline constexpr std::size_t kMaxProposals = 31;

/// Violated precondition (dimension mismatch, out-of-range index, bad value).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// External reward of a zero-weight expert cannot be weight-normalized.
class NormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reward parameters that cannot be derived or fail the required identities.
class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive search refused because the search space exceeds its guard.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Dense row-major matrix; rows are experts, columns are proposals.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Grid from_rows(const std::vector<std::vector<T>>& rows) {
    Grid g(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != g.cols_) {
        throw ContractError("ragged matrix: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " columns, expected " +
                            std::to_string(g.cols_));
      }
      for (std::size_t j = 0; j < g.cols_; ++j) g(i, j) = rows[i][j];
    }
    return g;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const {
    return std::span<const T>(data_).subspan(i * cols_, cols_);
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// The one-shot game: expert weights, beliefs p_ij and external rewards g_ij.
///
/// Validated on construction; all p_ij lie in [0,1], weights and external
/// rewards are non-negative, and there is at least one expert and proposal.
class Instance {
 public:
  Instance(std::vector<double> weights, Grid<double> beliefs, Grid<double> external);

  /// Instance with all external rewards zero.
  Instance(std::vector<double> weights, Grid<double> beliefs);

  std::size_t experts() const { return weights_.size(); }
  std::size_t proposals() const { return beliefs_.cols(); }

  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double belief(std::size_t i, std::size_t j) const { return beliefs_(i, j); }
  double external(std::size_t i, std::size_t j) const { return external_(i, j); }
  const Grid<double>& beliefs() const { return beliefs_; }
  const Grid<double>& external() const { return external_; }

  /// External reward divided by the expert's weight. Zero weight with a
  /// positive external reward throws NormalizationError.
  double normalized_external(std::size_t i, std::size_t j) const;

  Instance with_weights(std::vector<double> weights) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<double> weights_;
  Grid<double> beliefs_;
  Grid<double> external_;
};

/// Mechanism parameters. Plain aggregate; validate with params::validate_schedule.
struct RewardSchedule {
  double a = 0.0;        // correct approval
  double a_prime = 0.0;  // correct disapproval
  double s = 0.0;        // penalty for approving a bad winner
  double T = 0.0;        // honesty threshold
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const RewardSchedule&, const RewardSchedule&) = default;
};

// A vote vector of one expert: bit j set iff the expert approves proposal j.
using VoteMask = std::uint32_t;

/// The n×k binary vote matrix, stored as one mask per expert.
class VotingProfile {
 public:
  VotingProfile() = default;
  VotingProfile(std::size_t experts, std::size_t proposals);

  static VotingProfile from_masks(std::vector<VoteMask> masks, std::size_t proposals);
  static VotingProfile from_rows(const std::vector<std::vector<int>>& rows);

  // Expert i's row taken from bits [i*k, (i+1)*k) of a packed profile index.
  static VotingProfile unpack(std::uint64_t bits, std::size_t experts, std::size_t proposals);
  std::uint64_t pack() const;

  std::size_t experts() const { return masks_.size(); }
  std::size_t proposals() const { return proposals_; }

  bool vote(std::size_t i, std::size_t j) const { return (masks_[i] >> j) & 1U; }
  void set_vote(std::size_t i, std::size_t j, bool approve);

  VoteMask mask(std::size_t i) const { return masks_[i]; }
  void set_mask(std::size_t i, VoteMask m);
  const std::vector<VoteMask>& masks() const { return masks_; }

  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const VotingProfile&, const VotingProfile&) = default;
  friend auto operator<=>(const VotingProfile& a, const VotingProfile& b) {
    return a.masks_ <=> b.masks_;
  }

 private:
  std::vector<VoteMask> masks_;
  std::size_t proposals_ = 0;
};

// Zero-based proposal index, or std::nullopt for the dummy proposal.
using Winner = std::optional<std::size_t>;

struct Outcome {
  Winner winner;
  std::vector<double> approval_mass;
  std::optional<bool> revealed_quality;
};

// 1-based proposal number with 0 for the dummy, as used in reports.
inline std::size_t proposal_number(const Winner& w) { return w ? *w + 1 : 0; }

inline VoteMask full_mask(std::size_t proposals) {
  return proposals >= 32 ? ~VoteMask{0} : static_cast<VoteMask>((1ULL << proposals) - 1);
}

void require_matching(const Instance& instance, const VotingProfile& profile);

}  // namespace avgov
