#include "slopkit/scoremodel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "slopkit/rng.hpp"

namespace slopkit::scoremodel {

namespace {

Eigen::VectorXd to_eigen(const Vec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_omega(const GaussianScoreModel& model, const Vec& omega) {
  if (omega.size() != model.num_experts()) {
    throw InvalidInputError("weights and model disagree on expert count");
  }
  if (!all_finite(omega)) throw InvalidInputError("weights must be finite");
  bool any_nonzero = false;
  for (double w : omega) any_nonzero |= (w != 0.0);
  if (!any_nonzero) {
    throw DomainError("zero weight vector: the fused statistic and margin are undefined");
  }
}

/// covariance^-1 mean via Cholesky (the model guarantees positive-definiteness).
Eigen::VectorXd solve_information_vector(const GaussianScoreModel& model) {
  return model.covariance().llt().solve(model.mean());
}

}  // namespace

GaussianScoreModel::GaussianScoreModel(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (mean_.size() == 0) throw InvalidInputError("GaussianScoreModel: empty mean");
  if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size()) {
    throw InvalidInputError("GaussianScoreModel: covariance shape does not match mean");
  }
  if (!mean_.allFinite() || !covariance_.allFinite()) {
    throw InvalidInputError("GaussianScoreModel: entries must be finite");
  }
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInputError("GaussianScoreModel: covariance must be symmetric within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance_);
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > 0.0)) {
    throw DomainError("GaussianScoreModel: covariance is not positive-definite "
                      "(smallest eigenvalue " +
                      std::to_string(smallest) + ")");
  }
  sqrt_factor_ = covariance_.llt().matrixL();
}

void EquicorrelatedSpec::validate() const {
  if (num_experts < 1) throw InvalidInputError("EquicorrelatedSpec: m must be >= 1");
  if (!(sigma0_sq > 0.0) || !std::isfinite(sigma0_sq)) {
    throw InvalidInputError("EquicorrelatedSpec: sigma0_sq must be positive");
  }
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw InvalidInputError("EquicorrelatedSpec: eta must lie in [0, 1)");
  }
}

GaussianScoreModel EquicorrelatedSpec::model() const {
  validate();
  const auto m = static_cast<Eigen::Index>(num_experts);
  const Eigen::MatrixXd cov =
      sigma0_sq * ((1.0 - eta) * Eigen::MatrixXd::Identity(m, m) +
                   eta * Eigen::MatrixXd::Ones(m, m));
  return GaussianScoreModel(Eigen::VectorXd::Ones(m), cov);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

FusedStatistics fused_statistics(const GaussianScoreModel& model, const Vec& omega) {
  check_omega(model, omega);
  const Eigen::VectorXd w = to_eigen(omega);
  FusedStatistics out;
  out.mu = w.dot(model.mean());
  out.sigma = std::sqrt(w.dot(model.covariance() * w));
  return out;
}

Vec optimal_weights(const GaussianScoreModel& model, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidInputError("optimal_weights: c must be positive and finite");
  }
  const Eigen::VectorXd w = c * solve_information_vector(model);
  if (!w.allFinite()) {
    throw SingularMatrixError("optimal_weights: covariance solve failed");
  }
  return Vec(w.data(), w.data() + w.size());
}

double detection_margin(const GaussianScoreModel& model) {
  return std::sqrt(model.mean().dot(solve_information_vector(model)));
}

double probit_accuracy_approx(double mu, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw InvalidInputError("probit_accuracy_approx: requires finite mu and sigma >= 0");
  }
  return normal_cdf(mu / std::sqrt(8.0 / std::numbers::pi + sigma * sigma));
}

double hard_decision_accuracy(const GaussianScoreModel& model, const Vec& omega) {
  const FusedStatistics fused = fused_statistics(model, omega);
  return normal_cdf(fused.mu / fused.sigma);
}

double sampled_accuracy_limit(const GaussianScoreModel& model) {
  return normal_cdf(detection_margin(model));
}

double equicorrelated_margin_sq(const EquicorrelatedSpec& spec) {
  spec.validate();
  const double m = static_cast<double>(spec.num_experts);
  return m / (spec.sigma0_sq * (1.0 + spec.eta * (m - 1.0)));
}

double cauchy_accuracy(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw DomainError("cauchy_accuracy: requires finite mu and sigma > 0");
  }
  return 0.5 + std::atan(mu / sigma) / std::numbers::pi;
}

double mc_expected_gold_reward(const GaussianScoreModel& model, const Vec& omega,
                               std::size_t trials, RngSeed seed) {
  check_omega(model, omega);
  if (trials == 0) throw InvalidInputError("mc_expected_gold_reward: trials must be >= 1");
  const Eigen::VectorXd w = to_eigen(omega);
  // Fuse first: omega' (mean + F z) = omega' mean + (F' omega)' z.
  const double mu = w.dot(model.mean());
  const Eigen::VectorXd fused_dirs = model.sqrt_factor().transpose() * w;

  auto engine = rng::make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    double z = mu;
    for (Eigen::Index i = 0; i < fused_dirs.size(); ++i) z += fused_dirs(i) * normal(engine);
    sum += sigmoid(z);
  }
  return sum / static_cast<double>(trials);
}

}  // namespace slopkit::scoremodel
