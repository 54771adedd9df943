#include "avgov/types.hpp"

#include <cmath>
#include <string>

namespace avgov {

namespace {

std::string cell(const char* what, std::size_t i, std::size_t j) {
  return std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

Instance::Instance(std::vector<double> weights, Grid<double> beliefs, Grid<double> external)
    : weights_(std::move(weights)), beliefs_(std::move(beliefs)), external_(std::move(external)) {
  if (weights_.empty()) throw ContractError("instance needs at least one expert");
  if (beliefs_.cols() == 0) throw ContractError("instance needs at least one proposal");
  if (beliefs_.cols() > kMaxProposals) {
    throw ContractError("at most " + std::to_string(kMaxProposals) + " proposals supported");
  }
  if (beliefs_.rows() != weights_.size()) {
    throw ContractError("beliefs have " + std::to_string(beliefs_.rows()) + " rows for " +
                        std::to_string(weights_.size()) + " experts");
  }
  if (external_.rows() != beliefs_.rows() || external_.cols() != beliefs_.cols()) {
    throw ContractError("external reward matrix must be " + std::to_string(beliefs_.rows()) +
                        "x" + std::to_string(beliefs_.cols()));
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw ContractError("weight[" + std::to_string(i) + "] must be a finite value >= 0");
    }
    for (std::size_t j = 0; j < beliefs_.cols(); ++j) {
      const double p = beliefs_(i, j);
      if (!(p >= 0.0 && p <= 1.0)) throw ContractError(cell("belief", i, j) + " outside [0,1]");
      const double g = external_(i, j);
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw ContractError(cell("external", i, j) + " must be a finite value >= 0");
      }
    }
  }
}

Instance::Instance(std::vector<double> weights, Grid<double> beliefs)
    : Instance(std::move(weights), beliefs, Grid<double>(beliefs.rows(), beliefs.cols(), 0.0)) {}

double Instance::normalized_external(std::size_t i, std::size_t j) const {
  const double g = external_(i, j);
  if (g == 0.0) return 0.0;
  if (weights_[i] == 0.0) {
    throw NormalizationError("expert " + std::to_string(i) +
                             " has zero weight but positive external reward on proposal " +
                             std::to_string(j));
  }
  return g / weights_[i];
}

Instance Instance::with_weights(std::vector<double> weights) const {
  return Instance(std::move(weights), beliefs_, external_);
}

VotingProfile::VotingProfile(std::size_t experts, std::size_t proposals)
    : masks_(experts, 0), proposals_(proposals) {
  if (proposals > kMaxProposals) throw ContractError("too many proposals for a vote mask");
}

VotingProfile VotingProfile::from_masks(std::vector<VoteMask> masks, std::size_t proposals) {
  VotingProfile out(masks.size(), proposals);
  for (std::size_t i = 0; i < masks.size(); ++i) out.set_mask(i, masks[i]);
  return out;
}

VotingProfile VotingProfile::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t k = rows.empty() ? 0 : rows.front().size();
  VotingProfile out(rows.size(), k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != k) throw ContractError("ragged vote matrix at row " + std::to_string(i));
    for (std::size_t j = 0; j < k; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw ContractError(cell("vote", i, j) + " must be 0 or 1");
      out.set_vote(i, j, v == 1);
    }
  }
  return out;
}

VotingProfile VotingProfile::unpack(std::uint64_t bits, std::size_t experts,
                                    std::size_t proposals) {
  VotingProfile out(experts, proposals);
  const VoteMask all = full_mask(proposals);
  for (std::size_t i = 0; i < experts; ++i) {
    out.masks_[i] = static_cast<VoteMask>((bits >> (i * proposals)) & all);
  }
  return out;
}

std::uint64_t VotingProfile::pack() const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    bits |= static_cast<std::uint64_t>(masks_[i]) << (i * proposals_);
  }
  return bits;
}

void VotingProfile::set_vote(std::size_t i, std::size_t j, bool approve) {
  if (j >= proposals_) throw ContractError("proposal index out of range");
  if (approve) {
    masks_.at(i) |= VoteMask{1} << j;
  } else {
    masks_.at(i) &= ~(VoteMask{1} << j);
  }
}

void VotingProfile::set_mask(std::size_t i, VoteMask m) {
  if ((m & ~full_mask(proposals_)) != 0) throw ContractError("vote mask has bits past k");
  masks_.at(i) = m;
}

std::vector<std::vector<int>> VotingProfile::to_rows() const {
  std::vector<std::vector<int>> rows(masks_.size(), std::vector<int>(proposals_, 0));
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    for (std::size_t j = 0; j < proposals_; ++j) rows[i][j] = vote(i, j) ? 1 : 0;
  }
  return rows;
}

void require_matching(const Instance& instance, const VotingProfile& profile) {
  if (profile.experts() != instance.experts() || profile.proposals() != instance.proposals()) {
    throw ContractError("profile is " + std::to_string(profile.experts()) + "x" +
                        std::to_string(profile.proposals()) + " but instance is " +
                        std::to_string(instance.experts()) + "x" +
                        std::to_string(instance.proposals()));
  }
}

}  // namespace avgov
