#include "slopkit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slopkit::samplers {

namespace {

constexpr double kBudget = 1e6;

std::size_t argmax_lowest(const Vec& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

/// Softmax over an arbitrary finite logit vector (selection weights).
Vec softmax(const Vec& logits) {
  const double hi = *std::max_element(logits.begin(), logits.end());
  Vec probs(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - hi);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::size_t sample_index(const Vec& probs, rng::Engine& engine) {
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  return dist(engine);
}

void check_reward_expert(const CandidateSet& candidates, std::size_t reward_expert) {
  if (reward_expert >= candidates.num_experts()) {
    throw InvalidInputError("reward expert index " + std::to_string(reward_expert) +
                            " out of range for m = " + std::to_string(candidates.num_experts()));
  }
}

}  // namespace

CandidateSet::CandidateSet(std::vector<Candidate> candidates)
    : candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw InvalidInputError("CandidateSet: needs n >= 1 candidates");
  num_experts_ = candidates_.front().expert_scores.size();
  if (num_experts_ == 0) throw InvalidInputError("CandidateSet: candidates carry no scores");
  for (const Candidate& c : candidates_) {
    if (c.expert_scores.size() != num_experts_) {
      throw InvalidInputError("CandidateSet: candidates disagree on expert count");
    }
    if (!all_finite(c.expert_scores)) {
      throw InvalidInputError("CandidateSet: expert scores must be finite");
    }
  }
}

CandidateSet draw_candidates(const core::DiscreteDistribution& reference,
                             const core::ScoreMatrix& all_expert_scores, std::size_t n,
                             RngSeed seed) {
  auto engine = rng::make_engine(seed);
  return draw_candidates(reference, all_expert_scores, n, engine);
}

CandidateSet draw_candidates(const core::DiscreteDistribution& reference,
                             const core::ScoreMatrix& all_expert_scores, std::size_t n,
                             rng::Engine& engine) {
  if (n == 0) throw InvalidInputError("draw_candidates: n must be >= 1");
  if (all_expert_scores.num_labels() != reference.size()) {
    throw InvalidInputError("draw_candidates: score matrix and reference disagree on |Y|");
  }
  // Labels outside the support are never drawn, so only the support is checked.
  for (std::size_t y = 0; y < reference.size(); ++y) {
    if (reference[y] > 0.0 &&
        std::abs(all_expert_scores.at(0, y) - std::log(reference[y])) > 1e-9) {
      throw ConsistencyError("draw_candidates: expert 0 scores do not equal log(reference) at label " +
                             std::to_string(y));
    }
  }

  std::discrete_distribution<std::size_t> label_dist(reference.probs().begin(),
                                                     reference.probs().end());
  std::vector<Candidate> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t label = label_dist(engine);
    Vec scores(all_expert_scores.num_experts());
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = all_expert_scores.at(i, label);
    out.push_back(Candidate{label, std::move(scores)});
  }
  return CandidateSet(std::move(out));
}

std::size_t best_of_n(const CandidateSet& candidates, std::size_t reward_expert) {
  check_reward_expert(candidates, reward_expert);
  std::size_t best = 0;
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    if (candidates[j].expert_scores[reward_expert] >
        candidates[best].expert_scores[reward_expert]) {
      best = j;
    }
  }
  return best;
}

std::size_t best_of_poisson(const core::DiscreteDistribution& reference,
                            const core::ScoreMatrix& scores, double rate,
                            std::size_t reward_expert, RngSeed seed) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidInputError("best_of_poisson: rate must be positive and finite");
  }
  auto engine = rng::make_engine(seed);
  std::poisson_distribution<std::size_t> count_dist(rate);
  const std::size_t n = std::max<std::size_t>(1, count_dist(engine));
  const CandidateSet candidates = draw_candidates(reference, scores, n, engine);
  return candidates[best_of_n(candidates, reward_expert)].label_index;
}

Vec soft_selection_probabilities(const CandidateSet& candidates, std::size_t reward_expert,
                                 double beta) {
  check_reward_expert(candidates, reward_expert);
  Vec logits(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    logits[j] = beta * candidates[j].expert_scores[reward_expert];
  }
  return softmax(logits);
}

std::size_t soft_best_of_n(const CandidateSet& candidates, std::size_t reward_expert, double beta,
                           RngSeed seed) {
  auto engine = rng::make_engine(seed);
  return sample_index(soft_selection_probabilities(candidates, reward_expert, beta), engine);
}

Vec slop_pseudo_reward(const CandidateSet& candidates, const core::WeightVector& omega) {
  if (omega.size() != candidates.num_experts()) {
    throw InvalidInputError("slop_pseudo_reward: weights and candidates disagree on m");
  }
  if (!all_finite(omega)) throw InvalidInputError("slop_pseudo_reward: weights must be finite");
  Vec out(candidates.size(), 0.0);
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const Vec& s = candidates[j].expert_scores;
    double r = (omega[0] - 1.0) * s[0];
    for (std::size_t i = 1; i < omega.size(); ++i) r += omega[i] * s[i];
    out[j] = r;
  }
  return out;
}

Vec slop_selection_probabilities(const CandidateSet& candidates, const core::WeightVector& omega) {
  return softmax(slop_pseudo_reward(candidates, omega));
}

std::size_t slop_sbon_select(const CandidateSet& candidates, const core::WeightVector& omega,
                             RngSeed seed) {
  auto engine = rng::make_engine(seed);
  return sample_index(slop_selection_probabilities(candidates, omega), engine);
}

std::size_t slop_hard_select(const CandidateSet& candidates, const core::WeightVector& omega) {
  return argmax_lowest(slop_pseudo_reward(candidates, omega));
}

core::DiscreteDistribution exact_selection_distribution(
    const core::DiscreteDistribution& reference, const core::ScoreMatrix& scores,
    const core::WeightVector& omega, std::size_t n) {
  if (n == 0) throw InvalidInputError("exact_selection_distribution: n must be >= 1");
  if (scores.num_labels() != reference.size()) {
    throw InvalidInputError("exact_selection_distribution: score matrix and reference disagree");
  }
  const std::size_t labels = reference.size();
  if (std::pow(static_cast<double>(labels), static_cast<double>(n)) > kBudget) {
    throw BudgetError("exact_selection_distribution: |Y|^n exceeds the 1e6 enumeration budget");
  }

  // Per-label selection logit: sum_i omega[i] s_i(y) - s_0(y).
  Vec label_logits = scores.combined_logits(omega);
  for (std::size_t y = 0; y < labels; ++y) label_logits[y] -= scores.at(0, y);

  Vec law(labels, 0.0);
  std::vector<std::size_t> tuple(n, 0);  // odometer over label tuples
  Vec tuple_logits(n);
  while (true) {
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) weight *= reference[tuple[j]];
    if (weight > 0.0) {
      for (std::size_t j = 0; j < n; ++j) tuple_logits[j] = label_logits[tuple[j]];
      const Vec sel = softmax(tuple_logits);
      for (std::size_t j = 0; j < n; ++j) law[tuple[j]] += weight * sel[j];
    }
    std::size_t pos = 0;
    while (pos < n && ++tuple[pos] == labels) {
      tuple[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return core::DiscreteDistribution(std::move(law));
}

}  // namespace slopkit::samplers
