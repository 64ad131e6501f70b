#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "slopkit/common.hpp"

namespace slopkit::scoremodel {

/// Jointly Gaussian per-expert log-posterior ratios: mean vector (nats) and
/// positive-definite covariance (nats^2).
class GaussianScoreModel {
 public:
  GaussianScoreModel(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  std::size_t num_experts() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }

  /// Lower-triangular factor F with F * F' = covariance (for sampling).
  const Eigen::MatrixXd& sqrt_factor() const noexcept { return sqrt_factor_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd sqrt_factor_;
};

/// Uniformly correlated pool: mean = 1_m, covariance
/// sigma0_sq * ((1 - eta) I + eta 1 1').
struct EquicorrelatedSpec {
  std::size_t num_experts = 1;
  double sigma0_sq = 1.0;
  double eta = 0.0;  // in [0, 1)

  void validate() const;
  GaussianScoreModel model() const;
};

struct FusedStatistics {
  double mu = 0.0;     // omega' mean
  double sigma = 0.0;  // sqrt(omega' covariance omega)
};

/// Standard normal CDF, computed via erfc (absolute error <= 1e-12).
double normal_cdf(double z);

double sigmoid(double z);

/// Mean and standard deviation of the fused statistic omega' L.
FusedStatistics fused_statistics(const GaussianScoreModel& model, const Vec& omega);

/// c * covariance^-1 * mean: the weights maximizing the detection margin
/// mu / sigma, whose optimum equals sqrt(mean' covariance^-1 mean).
Vec optimal_weights(const GaussianScoreModel& model, double c);

/// sqrt(mean' covariance^-1 mean).
double detection_margin(const GaussianScoreModel& model);

/// Phi(mu / sqrt(8/pi + sigma^2)): the classical probit approximation of
/// E[sigmoid(Z)] for Z ~ N(mu, sigma^2).
double probit_accuracy_approx(double mu, double sigma);

/// Phi(mu / sigma) for the fused statistic: accuracy of deciding by the sign
/// of omega' L. Scale-invariant in omega.
double hard_decision_accuracy(const GaussianScoreModel& model, const Vec& omega);

/// Phi(sqrt(mean' covariance^-1 mean)): the limit of the approximate sampled
/// accuracy at optimal weights as the weight scale grows.
double sampled_accuracy_limit(const GaussianScoreModel& model);

/// Closed form m / (sigma0_sq * (1 + eta * (m - 1))) for the equicorrelated
/// pool's squared detection margin.
double equicorrelated_margin_sq(const EquicorrelatedSpec& spec);

/// P(Z > 0) = 1/2 + arctan(mu / sigma) / pi for Cauchy Z with location mu and
/// scale sigma > 0.
double cauchy_accuracy(double mu, double sigma);

/// Monte Carlo estimate of E[sigmoid(omega' L)] over L ~ N(mean, covariance).
double mc_expected_gold_reward(const GaussianScoreModel& model, const Vec& omega,
                               std::size_t trials, RngSeed seed);

}  // namespace slopkit::scoremodel
