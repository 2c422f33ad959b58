#include "gmmse/bounds.hpp"

#include <cmath>

namespace gmmse {

double genie_lower_bound(const PrecomputedEstimator& pre) {
  double total = 0.0;
  const auto& covs = pre.posterior_covariances();
  for (std::size_t i = 0; i < pre.pairs().size(); ++i)
    total += std::exp(pre.pairs()[i].log_weight) * covs[i].trace();
  return total;
}

double lmmse_upper_bound(const LmmseEstimator& lmmse) { return lmmse.error_covariance().trace(); }

double lmmse_upper_bound(const BayesianLinearModel& model) {
  return lmmse_upper_bound(LmmseEstimator(model));
}

double loose_upper_bound(const BayesianLinearModel& model) {
  double total = 0.0;
  for (const auto& c : model.x_prior().components())
    total += c.weight * (c.covariance.trace() + c.mean.squaredNorm());
  return total;
}

BoundsReport compute_bounds(const BayesianLinearModel& model, const PrecomputedEstimator& pre) {
  const LmmseEstimator lmmse(model);
  return {genie_lower_bound(pre), lmmse_upper_bound(lmmse), loose_upper_bound(model),
          lmmse.prior_covariance().trace()};
}

}  // namespace gmmse
