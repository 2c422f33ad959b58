#include "gmmse/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gmmse {
namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

PrecomputedEstimator::PrecomputedEstimator(const BayesianLinearModel& model)
    : x_components_(model.x_prior().size()),
      noise_components_(model.noise().size()),
      state_dim_(model.state_dim()),
      observation_dim_(model.observation_dim()) {
  const Matrix& H = model.H();
  auto covs = std::make_shared<std::vector<Matrix>>();
  pairs_.reserve(x_components_ * noise_components_);
  covs->reserve(x_components_ * noise_components_);

  for (std::size_t k = 0; k < x_components_; ++k) {
    const auto& xk = model.x_prior().component(k);
    const Matrix h_cxx = H * xk.covariance;  // m x d, equals C_yx^(k)
    for (std::size_t l = 0; l < noise_components_; ++l) {
      const auto& nl = model.noise().component(l);
      ComponentPair pair;
      pair.k = k;
      pair.l = l;
      const double w = xk.weight * nl.weight;
      pair.log_weight = w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
      pair.x_mean = xk.mean;
      pair.y_mean = H * xk.mean + nl.mean;

      pair.y_factor.compute(symmetrized(h_cxx * H.transpose() + nl.covariance));
      if (pair.y_factor.info() != Eigen::Success) {
        std::ostringstream os;
        os << "Cholesky of observation covariance failed for (k=" << k << ", l=" << l << ")";
        throw NumericalError(os.str());
      }
      pair.y_log_det = 2.0 * pair.y_factor.matrixLLT().diagonal().array().log().sum();
      pair.gain = pair.y_factor.solve(h_cxx).transpose();
      covs->push_back(symmetrized(xk.covariance - pair.gain * h_cxx));
      pairs_.push_back(std::move(pair));
    }
  }
  posterior_covs_ = std::move(covs);
}

GaussianMixture PosteriorGM::to_mixture() const {
  std::vector<GaussianComponent> out;
  out.reserve(means.size());
  for (std::size_t i = 0; i < means.size(); ++i)
    out.push_back({responsibilities[i], means[i], (*covariances)[i]});
  return GaussianMixture(std::move(out));
}

std::vector<double> responsibilities(const PrecomputedEstimator& pre, const Vector& y) {
  if (y.size() != pre.observation_dim())
    throw ValidationError("observation dimension does not match model");
  const double log_norm = static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
  const auto& pairs = pre.pairs();
  std::vector<double> logits(pairs.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const Vector whitened = p.y_factor.matrixL().solve(y - p.y_mean);
    logits[i] = p.log_weight - 0.5 * (log_norm + p.y_log_det + whitened.squaredNorm());
    peak = std::max(peak, logits[i]);
  }
  double total = 0.0;
  for (double& v : logits) {
    v = std::exp(v - peak);
    total += v;
  }
  for (double& v : logits) v /= total;
  return logits;
}

PosteriorGM posterior(const PrecomputedEstimator& pre, const Vector& y) {
  PosteriorGM post;
  post.responsibilities = responsibilities(pre, y);
  post.covariances = pre.shared_posterior_covariances();
  post.means.reserve(pre.pairs().size());
  for (const auto& p : pre.pairs()) post.means.push_back(p.x_mean + p.gain * (y - p.y_mean));
  return post;
}

Vector posterior_mean(const PosteriorGM& post) {
  Vector mean = Vector::Zero(post.means.front().size());
  for (std::size_t i = 0; i < post.means.size(); ++i)
    mean += post.responsibilities[i] * post.means[i];
  return mean;
}

Matrix posterior_covariance(const PosteriorGM& post) {
  const Vector mean = posterior_mean(post);
  Matrix cov = Matrix::Zero(mean.size(), mean.size());
  for (std::size_t i = 0; i < post.means.size(); ++i) {
    const Vector centered = post.means[i] - mean;
    cov += post.responsibilities[i] * ((*post.covariances)[i] + centered * centered.transpose());
  }
  return symmetrized(cov);
}

Vector mmse_estimate(const PrecomputedEstimator& pre, const Vector& y) {
  return posterior_mean(posterior(pre, y));
}

LmmseEstimator::LmmseEstimator(const BayesianLinearModel& model) {
  const Matrix& H = model.H();
  x_mean_ = mixture_mean(model.x_prior());
  y_mean_ = H * x_mean_ + mixture_mean(model.noise());
  prior_cov_ = mixture_covariance(model.x_prior());
  const Matrix h_cxx = H * prior_cov_;
  Eigen::LLT<Matrix> innovation(
      symmetrized(h_cxx * H.transpose() + mixture_covariance(model.noise())));
  if (innovation.info() != Eigen::Success)
    throw NumericalError("LMMSE innovation covariance is not positive definite");
  gain_ = innovation.solve(h_cxx).transpose();
  error_cov_ = symmetrized(prior_cov_ - gain_ * h_cxx);
}

Vector LmmseEstimator::estimate(const Vector& y) const {
  if (y.size() != y_mean_.size())
    throw ValidationError("observation dimension does not match model");
  return x_mean_ + gain_ * (y - y_mean_);
}

Vector lmmse_estimate(const BayesianLinearModel& model, const Vector& y) {
  return LmmseEstimator(model).estimate(y);
}

}  // namespace gmmse
