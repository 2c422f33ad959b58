#pragma once

#include "gmmse/posterior.hpp"

namespace gmmse {

// The Bayesian MSE of the MMSE estimator is Tr(M) with M = M1 + M2 + M3:
//   M1 = sum p_k q_l C_x|y^(k,l)          (genie knows (k, l))
//   M2 = sum p_k q_l E{(u^(k,l) - u_x)(u^(k,l) - u_x)^T | k, l}
//   M3 = cross terms involving the squared posterior mean.
// M3 has no closed form; it only enters through the empirical MSE.

struct BoundsReport {
  double lower = 0.0;        // Tr(M1)
  double upper = 0.0;        // LMMSE error, Tr(C_xx - C_xy C_yy^-1 C_yx)
  double loose_upper = 0.0;  // Tr(M1) + Tr(M2) = sum p_k (Tr C_k + ||u_k||^2)
  double trace_prior = 0.0;  // Tr(C_xx)
};

/// sum_{k,l} p_k q_l Tr(C_x|y^(k,l))
double genie_lower_bound(const PrecomputedEstimator& pre);

/// MSE of the LMMSE estimator.
double lmmse_upper_bound(const BayesianLinearModel& model);
double lmmse_upper_bound(const LmmseEstimator& lmmse);

/// sum_k p_k (Tr(C_xx^(k)) + ||u_x^(k)||^2). Diagnostic only.
double loose_upper_bound(const BayesianLinearModel& model);

BoundsReport compute_bounds(const BayesianLinearModel& model, const PrecomputedEstimator& pre);

}  // namespace gmmse
