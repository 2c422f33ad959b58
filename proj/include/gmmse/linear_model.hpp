#pragma once

#include <cmath>

#include "gmmse/mixture.hpp"

namespace gmmse {

/// y = H x + n with independent mixture priors on x (d-dim) and n (m-dim).
class BayesianLinearModel {
 public:
  /// Throws ValidationError unless H is noise.dimension() x x_prior.dimension().
  BayesianLinearModel(Matrix H, GaussianMixture x_prior, GaussianMixture noise);

  const Matrix& H() const { return H_; }
  const GaussianMixture& x_prior() const { return x_prior_; }
  const GaussianMixture& noise() const { return noise_; }

  Eigen::Index state_dim() const { return H_.cols(); }
  Eigen::Index observation_dim() const { return H_.rows(); }

 private:
  Matrix H_;
  GaussianMixture x_prior_;
  GaussianMixture noise_;
};

/// Mixture of y with components (p_k q_l, H u_k + u_l, H C_k H^T + C_l) in
/// row-major (k outer, l inner) order. Throws NumericalError naming (k, l)
/// if an observation covariance is not positive definite.
GaussianMixture observation_mixture(const BayesianLinearModel& model);

/// Mixture of the stacked vector [y; x], obtained as the image of
/// independent_join(x_prior, noise) under [[H, I], [I, 0]].
GaussianMixture joint_xy_mixture(const BayesianLinearModel& model);

/// E||v||^2 = Tr(C) + ||u||^2 from mixture moments.
double second_moment(const GaussianMixture& mixture);

/// E||x||^2 / E||n||^2. Throws ValidationError if the noise second moment is 0.
double snr(const BayesianLinearModel& model);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

/// Same model with noise replaced by the distribution of a * n: means scale
/// by a, covariances by a^2.
BayesianLinearModel scale_noise(const BayesianLinearModel& model, double a);

struct CalibratedModel {
  BayesianLinearModel model;
  double noise_scale;
};

/// Picks a > 0 with snr(scale_noise(model, a)) = 10^(target_snr_db / 10).
/// Throws ValidationError for a non-finite target.
CalibratedModel calibrate_noise_scale(const BayesianLinearModel& model, double target_snr_db);

}  // namespace gmmse
