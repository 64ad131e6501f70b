#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "slopkit/calibration.hpp"
#include "slopkit/common.hpp"
#include "slopkit/core.hpp"
#include "slopkit/scoremodel.hpp"

namespace slopkit::synth {

/// One multiple-choice task: 2-5 answer options, one of them correct.
struct SyntheticTask {
  std::uint64_t task_id = 0;
  core::OutputSpace space;
  std::size_t correct_index = 0;
};

/// Proxy reward quality: probability that the rewarded option is the correct
/// one; otherwise a uniformly random incorrect option is rewarded.
struct SyntheticProxySpec {
  double target_accuracy = 1.0;
};

/// Stand-in generative reference: Dirichlet-style option noise with a logit
/// bonus on the correct option. Higher correct_bias means higher accuracy.
struct ReferenceSkillSpec {
  double concentration = 2.0;
  double correct_bias = 0.0;
};

std::vector<SyntheticTask> gen_tasks(
    std::size_t count, const std::vector<std::pair<std::size_t, double>>& option_sizes,
    RngSeed seed);

core::DiscreteDistribution synthetic_reference(const SyntheticTask& task,
                                               const ReferenceSkillSpec& skill, RngSeed seed);

/// One-hot reward over the task's options; frozen per (task, seed).
Vec synthetic_proxy_reward(const SyntheticTask& task, const SyntheticProxySpec& spec,
                           RngSeed seed);

/// Mean reference probability of the correct option over `tasks`, with the
/// same per-task seed derivation the sweep uses.
double reference_accuracy(const std::vector<SyntheticTask>& tasks,
                          const ReferenceSkillSpec& skill, RngSeed seed);

/// Bisect correct_bias so that reference_accuracy on `sample_count` fresh
/// tasks of the given option size hits `target` (monotone calibration curve).
double tune_correct_bias(double target, std::size_t option_size, double concentration,
                         std::size_t sample_count, RngSeed seed);

struct SweepRow {
  double proxy_accuracy = 0.0;
  std::string method;
  double eval_accuracy = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepConfig {
  std::vector<double> proxy_accuracies;
  std::vector<std::string> methods;  // any of: optimized, hedge, nonneg-beta
  std::size_t calib_count = 200;
  std::size_t eval_count = 2000;
  calibration::CalibrationConfig calib;
};

/// Two-expert sweep over proxy accuracies: calibrate (alpha, beta) on the
/// first calib_count tasks with the exact pooled objective, evaluate the
/// pooled distribution exactly on the next eval_count tasks, and emit
/// reference / greedy / proxy baseline rows alongside each method.
SweepResult run_accuracy_sweep(const std::vector<SyntheticTask>& tasks,
                               const ReferenceSkillSpec& skill, const SweepConfig& config,
                               RngSeed seed);

/// Binary-label world realizing a GaussianScoreModel: per prompt, expert
/// log-posterior-ratio vector L ~ N(mean, covariance), per-expert binary
/// scores with difference L, candidates sampled from expert 0, gold = 1 on
/// the correct label.
calibration::ScoreTable gaussian_world_table(const scoremodel::GaussianScoreModel& model,
                                             std::size_t prompts,
                                             std::size_t candidates_per_prompt, RngSeed seed);

/// Monte Carlo accuracy of deciding by the sign of omega' L in the same
/// world: the empirical counterpart of scoremodel::hard_decision_accuracy.
double world_hard_decision_accuracy(const scoremodel::GaussianScoreModel& model,
                                    const Vec& omega, std::size_t prompts, RngSeed seed);

struct KlPoint {
  std::size_t n = 0;
  double kl = 0.0;
};

struct KlConvergence {
  std::vector<KlPoint> points;
  double loglog_slope = 0.0;  // NaN when undefined (< 2 points or KL <= 0)
};

/// KL between the exact pooled distribution and the exact selection law at
/// each candidate count, plus the fitted log-log slope.
KlConvergence kl_convergence_experiment(const core::DiscreteDistribution& reference,
                                        const core::ScoreMatrix& scores, const Vec& omega,
                                        const std::vector<std::size_t>& n_values);

/// Expected gold reward of the single-expert binary world as a function of
/// the expert weight, for log-likelihood ratios (ratio0, ratio1):
/// sigmoid(w * ratio0) + sigmoid(w * ratio1).
double single_expert_expected_reward(double weight, double ratio0, double ratio1);

/// The three qualitative regimes of single-expert weight optimization:
/// flat (both ratios zero), interior maximizer (opposite signs), and
/// supremum approached only with diverging weight (shared sign).
struct SingleExpertRegimes {
  std::array<double, 3> flat_weights{-10.0, 0.0, 10.0};
  std::array<double, 3> flat_rewards{};  // identically 1

  double interior_ratio0 = 0.0, interior_ratio1 = 0.0;
  double interior_weight = 0.0;
  double interior_reward = 0.0;
  double interior_gradient = 0.0;  // ~0 at the maximizer

  double diverging_ratio0 = 0.0, diverging_ratio1 = 0.0;
  double diverging_reward_at_50 = 0.0;
  double diverging_supremum = 2.0;
};

SingleExpertRegimes single_expert_regimes();

}  // namespace slopkit::synth
