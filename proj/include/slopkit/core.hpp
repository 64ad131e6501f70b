#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slopkit/common.hpp"

namespace slopkit::core {

/// Ordered set of distinct symbolic labels (answer letters, class names, ...).
class OutputSpace {
 public:
  explicit OutputSpace(std::vector<std::string> labels);

  /// Anonymous space with labels "y0", "y1", ...
  static OutputSpace indexed(std::size_t count);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  bool operator==(const OutputSpace& other) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Normalized probability vector over a finite output space.
/// Entries are >= 0 and sum to 1 within 1e-9; the vector is immutable.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(Vec probs);

  static DiscreteDistribution uniform(std::size_t size);

  std::size_t size() const noexcept { return probs_.size(); }
  double prob(std::size_t i) const { return probs_.at(i); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  const Vec& probs() const noexcept { return probs_; }

  /// Index of the largest entry; ties go to the lowest index.
  std::size_t argmax() const noexcept;

 private:
  Vec probs_;
};

/// Per-prompt expert log-scores (nats): row i holds expert i's score for
/// every label. All entries must be finite.
class ScoreMatrix {
 public:
  ScoreMatrix(std::size_t num_experts, std::size_t num_labels);
  static ScoreMatrix from_rows(const std::vector<Vec>& rows);

  std::size_t num_experts() const noexcept { return num_experts_; }
  std::size_t num_labels() const noexcept { return num_labels_; }

  double at(std::size_t expert, std::size_t label) const {
    return data_[expert * num_labels_ + label];
  }
  void set(std::size_t expert, std::size_t label, double value);

  Vec row(std::size_t expert) const;
  /// Column-wise weighted combination: logit(y) = sum_i omega[i] * s(i, y).
  Vec combined_logits(const Vec& omega) const;

 private:
  std::size_t num_experts_;
  std::size_t num_labels_;
  Vec data_;  // row-major
};

/// Unconstrained real ensemble weights; any sign is permitted.
using WeightVector = Vec;

/// exp(logits) normalized to sum 1, computed with max-subtraction so that
/// inputs with magnitude up to 1e6 stay finite. Requires finite, non-empty
/// logits.
DiscreteDistribution softmax_normalize(const Vec& logits);

/// Distribution proportional to p(y) * exp(beta * reward(y)).
/// beta = 0 returns p unchanged.
DiscreteDistribution tilted_distribution(const DiscreteDistribution& p, const Vec& reward,
                                         double beta);

/// Distribution proportional to p(y)^alpha * exp(beta * reward(y)).
/// alpha = 1 reduces to tilted_distribution; alpha = 0, beta = 0 is uniform.
/// Zero-probability entries stay zero for alpha > 0 and are a domain error
/// for alpha <= 0.
DiscreteDistribution tempered_tilted(const DiscreteDistribution& p, const Vec& reward,
                                     double alpha, double beta);

/// Weighted pool of expert scores: softmax over labels of omega' * scores.
DiscreteDistribution slop_distribution(const ScoreMatrix& scores, const WeightVector& omega);

/// KL(p || q) in nats. Errors if q(y) = 0 somewhere p(y) > 0.
double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// E_pi[beta * reward + (alpha - 1) * log p] - KL(pi || p).
/// tempered_tilted(p, reward, alpha, beta) is its maximizer over pi.
double regularized_objective(const DiscreteDistribution& pi, const DiscreteDistribution& p,
                             const Vec& reward, double alpha, double beta);

/// sum_y pi(y) * gold(y).
double expected_reward(const DiscreteDistribution& pi, const Vec& gold);

/// Shannon entropy in nats, in [0, log size].
double entropy(const DiscreteDistribution& pi);

namespace detail {

/// log(sum_i exp(v[i])) with max-subtraction; -inf entries are permitted.
double log_sum_exp(const Vec& values);

/// Softmax of logits that may contain -inf (zero mass); at least one entry
/// must be finite.
DiscreteDistribution distribution_from_logits(const Vec& logits);

}  // namespace detail

}  // namespace slopkit::core
