#include "slopkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace slopkit::core {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidInputError(std::string(what) + ": size mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

OutputSpace::OutputSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw InvalidInputError("OutputSpace needs at least 2 labels");
  }
  std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw InvalidInputError("OutputSpace labels must be distinct");
  }
}

OutputSpace OutputSpace::indexed(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) labels.push_back("y" + std::to_string(i));
  return OutputSpace(std::move(labels));
}

DiscreteDistribution::DiscreteDistribution(Vec probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidInputError("DiscreteDistribution: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidInputError("DiscreteDistribution: entries must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidInputError("DiscreteDistribution: entries sum to " + std::to_string(sum) +
                            ", expected 1 within 1e-9");
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t size) {
  if (size == 0) throw InvalidInputError("uniform: size must be >= 1");
  return DiscreteDistribution(Vec(size, 1.0 / static_cast<double>(size)));
}

std::size_t DiscreteDistribution::argmax() const noexcept {
  return static_cast<std::size_t>(
      std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

ScoreMatrix::ScoreMatrix(std::size_t num_experts, std::size_t num_labels)
    : num_experts_(num_experts), num_labels_(num_labels), data_(num_experts * num_labels, 0.0) {
  if (num_experts == 0 || num_labels == 0) {
    throw InvalidInputError("ScoreMatrix: needs at least one expert and one label");
  }
}

ScoreMatrix ScoreMatrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) throw InvalidInputError("ScoreMatrix: no rows");
  ScoreMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_size(rows[i].size(), m.num_labels_, "ScoreMatrix row");
    for (std::size_t y = 0; y < m.num_labels_; ++y) m.set(i, y, rows[i][y]);
  }
  return m;
}

void ScoreMatrix::set(std::size_t expert, std::size_t label, double value) {
  if (!std::isfinite(value)) throw InvalidInputError("ScoreMatrix: entries must be finite");
  data_.at(expert * num_labels_ + label) = value;
}

Vec ScoreMatrix::row(std::size_t expert) const {
  Vec out(num_labels_);
  for (std::size_t y = 0; y < num_labels_; ++y) out[y] = at(expert, y);
  return out;
}

Vec ScoreMatrix::combined_logits(const Vec& omega) const {
  require_same_size(omega.size(), num_experts_, "weights vs experts");
  Vec logits(num_labels_, 0.0);
  for (std::size_t i = 0; i < num_experts_; ++i) {
    for (std::size_t y = 0; y < num_labels_; ++y) logits[y] += omega[i] * at(i, y);
  }
  return logits;
}

namespace detail {

double log_sum_exp(const Vec& values) {
  double hi = -kInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == -kInf) return -kInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

DiscreteDistribution distribution_from_logits(const Vec& logits) {
  if (logits.empty()) throw InvalidInputError("softmax: empty logit vector");
  double hi = -kInf;
  for (double v : logits) {
    if (std::isnan(v) || v == kInf) {
      throw InvalidInputError("softmax: logits must not be NaN or +inf");
    }
    hi = std::max(hi, v);
  }
  if (hi == -kInf) throw DomainError("softmax: all logits are -inf");
  Vec probs(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - hi);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return DiscreteDistribution(std::move(probs));
}

}  // namespace detail

DiscreteDistribution softmax_normalize(const Vec& logits) {
  if (logits.empty()) throw InvalidInputError("softmax_normalize: empty logit vector");
  if (!all_finite(logits)) throw InvalidInputError("softmax_normalize: logits must be finite");
  return detail::distribution_from_logits(logits);
}

DiscreteDistribution tilted_distribution(const DiscreteDistribution& p, const Vec& reward,
                                         double beta) {
  return tempered_tilted(p, reward, 1.0, beta);
}

DiscreteDistribution tempered_tilted(const DiscreteDistribution& p, const Vec& reward,
                                     double alpha, double beta) {
  require_same_size(reward.size(), p.size(), "reward vs distribution");
  if (!all_finite(reward)) throw InvalidInputError("tempered_tilted: rewards must be finite");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidInputError("tempered_tilted: alpha and beta must be finite");
  }
  if (alpha == 1.0 && beta == 0.0) return p;

  Vec logits(p.size());
  for (std::size_t y = 0; y < p.size(); ++y) {
    const double py = p[y];
    if (py == 0.0) {
      if (alpha <= 0.0) {
        throw DomainError("tempered_tilted: zero probability with alpha <= 0");
      }
      logits[y] = -kInf;  // mass stays zero
    } else {
      logits[y] = alpha * std::log(py) + beta * reward[y];
    }
  }
  return detail::distribution_from_logits(logits);
}

DiscreteDistribution slop_distribution(const ScoreMatrix& scores, const WeightVector& omega) {
  if (!all_finite(omega)) throw InvalidInputError("slop_distribution: weights must be finite");
  return detail::distribution_from_logits(scores.combined_logits(omega));
}

double kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p.size(), q.size(), "kl_divergence");
  double kl = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] == 0.0) continue;  // 0 log 0 := 0
    if (q[y] == 0.0) {
      throw DomainError("kl_divergence: q has zero mass on the support of p");
    }
    kl += p[y] * std::log(p[y] / q[y]);
  }
  return std::max(kl, 0.0);
}

double regularized_objective(const DiscreteDistribution& pi, const DiscreteDistribution& p,
                             const Vec& reward, double alpha, double beta) {
  require_same_size(pi.size(), p.size(), "regularized_objective distributions");
  require_same_size(reward.size(), p.size(), "regularized_objective reward");
  double value = 0.0;
  for (std::size_t y = 0; y < pi.size(); ++y) {
    if (pi[y] == 0.0) continue;
    if (p[y] == 0.0) {
      throw DomainError("regularized_objective: pi is not absolutely continuous w.r.t. p");
    }
    const double logp = std::log(p[y]);
    value += pi[y] * (beta * reward[y] + (alpha - 1.0) * logp);
    value -= pi[y] * (std::log(pi[y]) - logp);
  }
  return value;
}

double expected_reward(const DiscreteDistribution& pi, const Vec& gold) {
  require_same_size(gold.size(), pi.size(), "expected_reward");
  double sum = 0.0;
  for (std::size_t y = 0; y < pi.size(); ++y) sum += pi[y] * gold[y];
  return sum;
}

double entropy(const DiscreteDistribution& pi) {
  double h = 0.0;
  for (std::size_t y = 0; y < pi.size(); ++y) {
    if (pi[y] > 0.0) h -= pi[y] * std::log(pi[y]);
  }
  return std::max(h, 0.0);
}

}  // namespace slopkit::core
