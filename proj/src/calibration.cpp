#include "slopkit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slopkit::calibration {

namespace {

constexpr double kWeightNormLimit = 1e6;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Candidate softmax for one prompt under the table's logit convention.
Vec selection_probs(const ScoreTable& table, std::size_t prompt, const Vec& omega) {
  const auto& cands = table.candidates(prompt);
  Vec logits(cands.size());
  for (std::size_t j = 0; j < cands.size(); ++j) {
    const Vec& s = cands[j].scores;
    double a = 0.0;
    for (std::size_t l = 0; l < omega.size(); ++l) a += omega[l] * s[l];
    if (table.kind() == TableKind::sampled) a -= s[0];
    logits[j] = a;
  }
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  Vec probs(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) {
    probs[j] = std::exp(logits[j] - hi);
    sum += probs[j];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

void check_omega(const ScoreTable& table, const Vec& omega) {
  if (omega.size() != table.num_experts()) {
    throw InvalidInputError("weights have " + std::to_string(omega.size()) +
                            " entries but the table has m = " +
                            std::to_string(table.num_experts()));
  }
  if (!all_finite(omega)) throw InvalidInputError("weights must be finite");
  if (table.num_prompts() == 0) throw InvalidInputError("table has no prompts");
}

void project(Vec& omega, Constraint constraint) {
  switch (constraint) {
    case Constraint::free:
      break;
    case Constraint::hedge:
      omega[0] = 1.0;
      omega[1] = std::max(0.0, omega[1]);
      break;
    case Constraint::nonneg_beta:
      for (std::size_t i = 1; i < omega.size(); ++i) omega[i] = std::max(0.0, omega[i]);
      break;
  }
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

ScoreTable::ScoreTable(std::size_t num_experts, TableKind kind)
    : num_experts_(num_experts), kind_(kind) {
  if (num_experts == 0) throw InvalidInputError("ScoreTable: needs m >= 1 experts");
}

void ScoreTable::add_prompt(std::string prompt_id, std::vector<TableEntry> candidates) {
  if (candidates.empty()) throw InvalidInputError("ScoreTable: prompt needs >= 1 candidates");
  for (const TableEntry& e : candidates) {
    if (e.scores.size() != num_experts_) {
      throw InvalidInputError("ScoreTable: candidate has " + std::to_string(e.scores.size()) +
                              " scores, expected " + std::to_string(num_experts_));
    }
    if (!all_finite(e.scores) || !std::isfinite(e.gold)) {
      throw InvalidInputError("ScoreTable: scores and gold rewards must be finite");
    }
  }
  ids_.push_back(std::move(prompt_id));
  prompts_.push_back(std::move(candidates));
}

bool ScoreTable::has_correct_flags() const noexcept {
  for (const auto& prompt : prompts_) {
    for (const TableEntry& e : prompt) {
      if (!e.correct.has_value()) return false;
    }
  }
  return !prompts_.empty();
}

void CalibrationConfig::validate(std::size_t num_experts) const {
  if (steps < 1) throw InvalidInputError("CalibrationConfig: steps must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidInputError("CalibrationConfig: learning_rate must be positive");
  }
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw InvalidInputError("CalibrationConfig: weight_decay must be >= 0");
  }
  if (constraint == Constraint::hedge && num_experts != 2) {
    throw InvalidInputError("CalibrationConfig: hedge constraint requires exactly 2 experts");
  }
  if (!init.empty()) {
    if (init.size() != num_experts) {
      throw InvalidInputError("CalibrationConfig: init size does not match expert count");
    }
    if (!all_finite(init)) throw InvalidInputError("CalibrationConfig: init must be finite");
  }
}

double empirical_objective(const ScoreTable& table, const Vec& omega, double weight_decay) {
  check_omega(table, omega);
  double total = 0.0;
  for (std::size_t i = 0; i < table.num_prompts(); ++i) {
    const Vec probs = selection_probs(table, i, omega);
    const auto& cands = table.candidates(i);
    double value = 0.0;
    for (std::size_t j = 0; j < cands.size(); ++j) value += probs[j] * cands[j].gold;
    total += value;
  }
  double penalty = 0.0;
  for (double w : omega) penalty += w * w;
  return total / static_cast<double>(table.num_prompts()) - weight_decay * penalty;
}

Vec objective_gradient(const ScoreTable& table, const Vec& omega, double weight_decay) {
  check_omega(table, omega);
  const std::size_t m = omega.size();
  Vec grad(m, 0.0);
  Vec mean_score(m);
  for (std::size_t i = 0; i < table.num_prompts(); ++i) {
    const Vec probs = selection_probs(table, i, omega);
    const auto& cands = table.candidates(i);
    double mean_gold = 0.0;
    std::fill(mean_score.begin(), mean_score.end(), 0.0);
    Vec cross(m, 0.0);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const double pg = probs[j] * cands[j].gold;
      mean_gold += pg;
      for (std::size_t l = 0; l < m; ++l) {
        cross[l] += pg * cands[j].scores[l];
        mean_score[l] += probs[j] * cands[j].scores[l];
      }
    }
    for (std::size_t l = 0; l < m; ++l) grad[l] += cross[l] - mean_gold * mean_score[l];
  }
  for (std::size_t l = 0; l < m; ++l) {
    grad[l] = grad[l] / static_cast<double>(table.num_prompts()) - 2.0 * weight_decay * omega[l];
  }
  return grad;
}

CalibrationResult calibrate_weights(const ScoreTable& table, const CalibrationConfig& config) {
  const std::size_t m = table.num_experts();
  config.validate(m);
  if (table.num_prompts() == 0) throw InvalidInputError("calibrate_weights: table has no prompts");

  Vec omega = config.init.empty() ? Vec(m, 1.0) : config.init;
  project(omega, config.constraint);

  CalibrationResult result;
  result.objective_trace.reserve(config.steps + 1);
  result.weight_trace.reserve(config.steps + 1);
  result.objective_trace.push_back(empirical_objective(table, omega, config.weight_decay));
  result.weight_trace.push_back(omega);

  Vec moment1(m, 0.0), moment2(m, 0.0);
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;

  for (int step = 1; step <= config.steps; ++step) {
    const Vec grad = objective_gradient(table, omega, config.weight_decay);
    if (config.optimizer == Optimizer::plain_ascent) {
      for (std::size_t l = 0; l < m; ++l) omega[l] += config.learning_rate * grad[l];
    } else {
      const double c1 = 1.0 - std::pow(kBeta1, step);
      const double c2 = 1.0 - std::pow(kBeta2, step);
      for (std::size_t l = 0; l < m; ++l) {
        moment1[l] = kBeta1 * moment1[l] + (1.0 - kBeta1) * grad[l];
        moment2[l] = kBeta2 * moment2[l] + (1.0 - kBeta2) * grad[l] * grad[l];
        omega[l] += config.learning_rate * (moment1[l] / c1) /
                    (std::sqrt(moment2[l] / c2) + kEps);
      }
    }
    project(omega, config.constraint);

    if (!all_finite(omega) || norm2(omega) > kWeightNormLimit) {
      throw DivergenceError(
          step, "calibrate_weights: weight norm exceeded 1e6 at step " + std::to_string(step) +
                    "; the objective may have no finite maximizer (the supremum can be "
                    "approached only by sharpening towards a hard output with diverging "
                    "weights); consider weight_decay > 0");
    }
    const double objective = empirical_objective(table, omega, config.weight_decay);
    if (!std::isfinite(objective)) {
      throw DivergenceError(step, "calibrate_weights: objective became non-finite at step " +
                                      std::to_string(step));
    }
    result.objective_trace.push_back(objective);
    result.weight_trace.push_back(omega);
  }
  result.final_weights = omega;
  return result;
}

std::vector<Vec> relative_score_pairs(const ScoreTable& table) {
  if (!table.has_correct_flags()) {
    throw InvalidInputError("relative_score_pairs: table lacks correct/incorrect flags");
  }
  std::vector<Vec> pairs;
  for (std::size_t i = 0; i < table.num_prompts(); ++i) {
    const auto& cands = table.candidates(i);
    for (const TableEntry& c : cands) {
      if (!*c.correct) continue;
      for (const TableEntry& w : cands) {
        if (*w.correct) continue;
        Vec diff(table.num_experts());
        for (std::size_t l = 0; l < diff.size(); ++l) diff[l] = c.scores[l] - w.scores[l];
        pairs.push_back(std::move(diff));
      }
    }
  }
  if (pairs.empty()) {
    throw InsufficientDataError(
        "relative_score_pairs: no prompt contains both a correct and an incorrect candidate");
  }
  return pairs;
}

MomentEstimate estimate_moments(const std::vector<Vec>& pairs) {
  if (pairs.empty()) throw InsufficientDataError("estimate_moments: no pairs");
  const std::size_t m = pairs.front().size();
  if (pairs.size() < m + 1) {
    throw InsufficientDataError("estimate_moments: need at least m + 1 = " +
                                std::to_string(m + 1) + " pairs, got " +
                                std::to_string(pairs.size()));
  }
  Eigen::MatrixXd data(pairs.size(), m);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    if (pairs[r].size() != m) throw InvalidInputError("estimate_moments: ragged pair vectors");
    for (std::size_t c = 0; c < m; ++c) data(r, c) = pairs[r][c];
  }

  MomentEstimate est;
  est.mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - est.mean.transpose();
  est.covariance =
      (centered.transpose() * centered) / static_cast<double>(pairs.size() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(est.covariance);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  est.condition_number = (lo <= 0.0 || hi <= 0.0) ? kInf : hi / lo;
  return est;
}

Vec inverse_covariance_weights(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance,
                               double ridge) {
  if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size()) {
    throw InvalidInputError("inverse_covariance_weights: dimension mismatch");
  }
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw InvalidInputError("inverse_covariance_weights: ridge must be >= 0");
  }
  const double scale = covariance.cwiseAbs().maxCoeff();
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + scale)) {
    throw InvalidInputError("inverse_covariance_weights: covariance is not symmetric");
  }
  const Eigen::MatrixXd system =
      covariance + ridge * Eigen::MatrixXd::Identity(mean.size(), mean.size());
  const Eigen::VectorXd solution = system.ldlt().solve(mean);
  const double residual_scale = system.norm() * solution.norm() + mean.norm() + 1e-300;
  if (!solution.allFinite() || (system * solution - mean).norm() > 1e-8 * residual_scale) {
    throw SingularMatrixError(
        "inverse_covariance_weights: covariance is numerically singular; pass ridge > 0 or "
        "use diag_covariance_weights");
  }
  return Vec(solution.data(), solution.data() + solution.size());
}

Vec diag_covariance_weights(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size()) {
    throw InvalidInputError("diag_covariance_weights: dimension mismatch");
  }
  Vec out(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double d = covariance(i, i);
    if (!(d > 0.0)) {
      throw DomainError("diag_covariance_weights: non-positive diagonal entry at index " +
                        std::to_string(i));
    }
    out[static_cast<std::size_t>(i)] = mean(i) / d;
  }
  return out;
}

Vec fixed_weights(std::size_t num_experts) {
  if (num_experts == 0) throw InvalidInputError("fixed_weights: m must be >= 1");
  return Vec(num_experts, 1.0);
}

}  // namespace slopkit::calibration
