#pragma once

#include <memory>
#include <vector>

#include "gmmse/linear_model.hpp"

namespace gmmse {

/// Per-(k, l) quantities of the conditional model given that x came from
/// prior component k and n from noise component l.
struct ComponentPair {
  std::size_t k = 0;
  std::size_t l = 0;
  double log_weight = 0.0;         // log(p_k q_l); -inf for a zero weight
  Vector x_mean;                   // u_x^(k)
  Vector y_mean;                   // H u_x^(k) + u_n^(l)
  Eigen::LLT<Matrix> y_factor;     // Cholesky of C_yy^(k,l)
  double y_log_det = 0.0;
  Matrix gain;                     // C_xx^(k) H^T (C_yy^(k,l))^-1, d x m
};

/// Everything about the MMSE estimator that does not depend on y.
///
/// Built once per model; afterwards immutable and safe to share across
/// threads. Inverses of C_yy are never formed: gains come from Cholesky
/// solves and log-likelihoods from triangular solves on the same factor.
class PrecomputedEstimator {
 public:
  /// Throws NumericalError naming (k, l) if some C_yy^(k,l) is not PD.
  explicit PrecomputedEstimator(const BayesianLinearModel& model);

  const std::vector<ComponentPair>& pairs() const { return pairs_; }
  /// C_x|y^(k,l) = C_xx^(k) - W^(k,l) H C_xx^(k), indexed like pairs().
  const std::vector<Matrix>& posterior_covariances() const { return *posterior_covs_; }
  std::shared_ptr<const std::vector<Matrix>> shared_posterior_covariances() const {
    return posterior_covs_;
  }

  std::size_t x_components() const { return x_components_; }
  std::size_t noise_components() const { return noise_components_; }
  Eigen::Index state_dim() const { return state_dim_; }
  Eigen::Index observation_dim() const { return observation_dim_; }

  /// Test hook: replaces the gain of pair `index`. Only negative-control
  /// tests use this.
  void override_gain(std::size_t index, Matrix gain) { pairs_.at(index).gain = std::move(gain); }

 private:
  std::vector<ComponentPair> pairs_;
  std::shared_ptr<const std::vector<Matrix>> posterior_covs_;
  std::size_t x_components_ = 0;
  std::size_t noise_components_ = 0;
  Eigen::Index state_dim_ = 0;
  Eigen::Index observation_dim_ = 0;
};

/// Posterior mixture f(x | y).
struct PosteriorGM {
  std::vector<double> responsibilities;  // alpha^(k,l)(y), row-major (k, l)
  std::vector<Vector> means;             // u_x|y^(k,l)
  std::shared_ptr<const std::vector<Matrix>> covariances;

  /// As a GaussianMixture; throws if a component covariance is singular.
  GaussianMixture to_mixture() const;
};

/// alpha^(k,l)(y) as a softmax of log(p_k q_l) + log f^(k,l)(y).
std::vector<double> responsibilities(const PrecomputedEstimator& pre, const Vector& y);

/// Full posterior at y.
PosteriorGM posterior(const PrecomputedEstimator& pre, const Vector& y);

/// sum alpha^(k,l) u_x|y^(k,l)
Vector posterior_mean(const PosteriorGM& post);

/// sum alpha (C^(k,l) + u^(k,l) u^(k,l)^T) - u u^T
Matrix posterior_covariance(const PosteriorGM& post);

/// E{x | y}.
Vector mmse_estimate(const PrecomputedEstimator& pre, const Vector& y);

/// Affine estimator built from the first two moments of the mixtures:
/// u_x + C_xx H^T (H C_xx H^T + C_nn)^-1 (y - H u_x - u_n).
class LmmseEstimator {
 public:
  /// Throws NumericalError if the innovation covariance is not PD.
  explicit LmmseEstimator(const BayesianLinearModel& model);

  Vector estimate(const Vector& y) const;

  const Matrix& gain() const { return gain_; }
  /// C_xx - C_xx H^T (H C_xx H^T + C_nn)^-1 H C_xx
  const Matrix& error_covariance() const { return error_cov_; }
  const Matrix& prior_covariance() const { return prior_cov_; }

 private:
  Vector x_mean_;
  Vector y_mean_;
  Matrix gain_;
  Matrix error_cov_;
  Matrix prior_cov_;
};

Vector lmmse_estimate(const BayesianLinearModel& model, const Vector& y);

}  // namespace gmmse
