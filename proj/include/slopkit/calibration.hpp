#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slopkit/common.hpp"
#include "slopkit/core.hpp"

namespace slopkit::calibration {

/// How a table's candidates relate to the reference expert:
///  - sampled:    candidates were drawn from expert 0, so selection logits
///                subtract the expert-0 score (importance correction);
///  - exhaustive: candidates enumerate the full response set, so the pooled
///                score is used as-is.
enum class TableKind { sampled, exhaustive };

struct TableEntry {
  Vec scores;  // one score per expert, nats
  double gold = 0.0;
  std::optional<bool> correct;
};

/// k prompts, each with >= 1 scored candidates, over a fixed pool of m
/// experts. Expert 0 is the reference model (its score is its log-likelihood).
class ScoreTable {
 public:
  explicit ScoreTable(std::size_t num_experts, TableKind kind = TableKind::sampled);

  void add_prompt(std::string prompt_id, std::vector<TableEntry> candidates);

  std::size_t num_experts() const noexcept { return num_experts_; }
  std::size_t num_prompts() const noexcept { return prompts_.size(); }
  TableKind kind() const noexcept { return kind_; }
  const std::string& prompt_id(std::size_t i) const { return ids_.at(i); }
  const std::vector<TableEntry>& candidates(std::size_t i) const { return prompts_.at(i); }

  /// True when every candidate carries a correct/incorrect flag.
  bool has_correct_flags() const noexcept;

 private:
  std::size_t num_experts_;
  TableKind kind_;
  std::vector<std::string> ids_;
  std::vector<std::vector<TableEntry>> prompts_;
};

enum class Optimizer { plain_ascent, adaptive_moment };

/// Weight-space constraints applied by projection after every ascent step.
enum class Constraint {
  free,
  hedge,        // omega[0] pinned to 1, omega[1] clipped >= 0; requires m = 2
  nonneg_beta,  // omega[1..m-1] clipped >= 0
};

struct CalibrationConfig {
  int steps = 500;
  double learning_rate = 0.05;
  double weight_decay = 0.0;
  Optimizer optimizer = Optimizer::adaptive_moment;
  Constraint constraint = Constraint::free;
  Vec init;  // empty means all-ones

  void validate(std::size_t num_experts) const;
};

struct CalibrationResult {
  Vec final_weights;
  Vec objective_trace;             // steps + 1 entries
  std::vector<Vec> weight_trace;   // (steps + 1) x m
};

/// Empirical calibration objective: mean over prompts of the gold reward
/// under the per-prompt candidate softmax, minus weight_decay * |omega|^2.
double empirical_objective(const ScoreTable& table, const Vec& omega, double weight_decay);

/// Analytic gradient of empirical_objective: per-prompt covariance, under the
/// candidate softmax, between gold reward and each expert's score, averaged
/// over prompts, minus 2 * weight_decay * omega.
Vec objective_gradient(const ScoreTable& table, const Vec& omega, double weight_decay);

/// Projected gradient ascent on empirical_objective (plain or Adam updates).
/// Throws DivergenceError if the objective becomes non-finite or |omega|
/// exceeds 1e6 during ascent.
CalibrationResult calibrate_weights(const ScoreTable& table, const CalibrationConfig& config);

/// All per-prompt (correct - incorrect) score difference vectors, pooled
/// across prompts. Requires correct/incorrect flags.
std::vector<Vec> relative_score_pairs(const ScoreTable& table);

struct MomentEstimate {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;      // sample covariance, count - 1 denominator
  double condition_number = 0.0;   // ratio of extreme eigenvalues; +inf if singular
};

/// Sample mean/covariance of the pooled difference vectors. Needs at least
/// m + 1 pairs.
MomentEstimate estimate_moments(const std::vector<Vec>& pairs);

/// omega = (covariance + ridge * I)^-1 mean via a symmetric solve.
Vec inverse_covariance_weights(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance,
                               double ridge = 0.0);

/// omega[i] = mean[i] / covariance(i, i).
Vec diag_covariance_weights(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance);

/// All-ones weights.
Vec fixed_weights(std::size_t num_experts);

}  // namespace slopkit::calibration
