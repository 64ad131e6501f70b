#pragma once

#include <cstddef>
#include <vector>

#include "slopkit/common.hpp"
#include "slopkit/core.hpp"
#include "slopkit/rng.hpp"

namespace slopkit::samplers {

/// One drawn response: its label plus the m expert scores for that label.
struct Candidate {
  std::size_t label_index = 0;
  Vec expert_scores;
};

/// n >= 1 candidates drawn i.i.d. from the reference expert (expert 0).
class CandidateSet {
 public:
  static constexpr std::size_t kReferenceExpert = 0;

  explicit CandidateSet(std::vector<Candidate> candidates);

  std::size_t size() const noexcept { return candidates_.size(); }
  std::size_t num_experts() const noexcept { return num_experts_; }
  const Candidate& operator[](std::size_t i) const { return candidates_.at(i); }
  const std::vector<Candidate>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<Candidate> candidates_;
  std::size_t num_experts_;
};

/// n i.i.d. draws from `reference`; each candidate carries the score-matrix
/// column of its label. Expert 0's scores must equal log(reference) within
/// 1e-9 on the support of `reference`.
CandidateSet draw_candidates(const core::DiscreteDistribution& reference,
                             const core::ScoreMatrix& all_expert_scores, std::size_t n,
                             RngSeed seed);
CandidateSet draw_candidates(const core::DiscreteDistribution& reference,
                             const core::ScoreMatrix& all_expert_scores, std::size_t n,
                             rng::Engine& engine);

/// Index of the candidate with the highest score from `reward_expert`;
/// ties go to the lowest index.
std::size_t best_of_n(const CandidateSet& candidates, std::size_t reward_expert);

/// Draw N ~ Poisson(rate), clamp N to >= 1, then best-of-N over fresh
/// candidates. Returns the selected label.
std::size_t best_of_poisson(const core::DiscreteDistribution& reference,
                            const core::ScoreMatrix& scores, double rate,
                            std::size_t reward_expert, RngSeed seed);

/// Selection probabilities proportional to exp(beta * reward) over candidates.
Vec soft_selection_probabilities(const CandidateSet& candidates, std::size_t reward_expert,
                                 double beta);

/// Sample an index with probability proportional to exp(beta * reward).
std::size_t soft_best_of_n(const CandidateSet& candidates, std::size_t reward_expert, double beta,
                           RngSeed seed);

/// Pseudo-reward r'(y_j) = (omega[0] - 1) * s_0(y_j) + sum_{i>=1} omega[i] * s_i(y_j),
/// the ensemble reward that corrects for candidates being drawn from expert 0.
Vec slop_pseudo_reward(const CandidateSet& candidates, const core::WeightVector& omega);

/// Selection probabilities proportional to exp(pseudo-reward).
Vec slop_selection_probabilities(const CandidateSet& candidates, const core::WeightVector& omega);

/// Sample a candidate index with probability proportional to exp(pseudo-reward).
std::size_t slop_sbon_select(const CandidateSet& candidates, const core::WeightVector& omega,
                             RngSeed seed);

/// Candidate index maximizing the pseudo-reward; ties go to the lowest index.
std::size_t slop_hard_select(const CandidateSet& candidates, const core::WeightVector& omega);

/// Exact law of the label returned by slop_sbon_select at sample size n,
/// computed by enumerating all |Y|^n candidate tuples. |Y|^n must not
/// exceed 1e6.
core::DiscreteDistribution exact_selection_distribution(
    const core::DiscreteDistribution& reference, const core::ScoreMatrix& scores,
    const core::WeightVector& omega, std::size_t n);

}  // namespace slopkit::samplers
