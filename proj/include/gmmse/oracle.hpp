#pragma once

#include <functional>

#include "gmmse/bounds.hpp"

namespace gmmse {

// Brute-force posterior statistics for scalar models (d = m = 1) by the
// trapezoidal rule on f(x) f_n(y - H x). Shares no code with the analytic
// estimator beyond reading model parameters.

struct QuadratureSpec {
  std::size_t grid_points = 20001;  // odd, >= 1001
  double span_sigmas = 12.0;        // >= 8
};

/// Throws ValidationError unless grid_points is odd and at least 1001 and
/// span_sigmas is at least 8.
void check_quadrature_spec(const QuadratureSpec& spec);

struct QuadPosterior {
  double log_evidence = 0.0;  // log f(y)
  double mean = 0.0;
  double variance = 0.0;
};

/// Posterior moments at y. Throws ValidationError for non-scalar models.
/// Does not check the evidence against the support threshold.
QuadPosterior quad_posterior(const BayesianLinearModel& model, double y,
                             const QuadratureSpec& spec = {});

/// E{x | y}. Throws NumericalError("y outside numerical support") when
/// f(y) < 1e-300.
double quad_posterior_mean(const BayesianLinearModel& model, double y,
                           const QuadratureSpec& spec = {});

/// Bayesian MSE of the MMSE estimator: integral of Var(x | y) f(y) dy, with
/// the same grid size used for the inner and outer integrals.
double quad_mse(const BayesianLinearModel& model, const QuadratureSpec& spec = {});

struct OracleReport {
  double max_deviation = 0.0;  // max |estimator(y) - quad mean(y)| over the y grid
  double quad_mse = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool mse_within_bounds = false;
  bool passed = false;
};

inline constexpr double kOracleTolerance = 1e-6;
inline constexpr double kOracleBoundSlack = 1e-8;

/// Compares `estimator` with the quadrature posterior mean on `y_points`
/// evenly spaced observations spanning the observation mean +- 6 standard
/// deviations, and checks lower <= quad_mse <= upper.
OracleReport check_against_oracle(const BayesianLinearModel& model,
                                  const std::function<double(double)>& estimator,
                                  const QuadratureSpec& mean_spec = {},
                                  const QuadratureSpec& mse_spec = {1001, 12.0},
                                  std::size_t y_points = 101);

/// check_against_oracle with the model's own MMSE estimator.
OracleReport check_against_oracle(const BayesianLinearModel& model,
                                  const QuadratureSpec& mean_spec = {},
                                  const QuadratureSpec& mse_spec = {1001, 12.0},
                                  std::size_t y_points = 101);

}  // namespace gmmse
