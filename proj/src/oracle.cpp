#include "gmmse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace gmmse {
namespace {

struct Scalar1D {
  std::vector<double> weights, means, variances;
};

Scalar1D scalar_parts(const GaussianMixture& mixture) {
  Scalar1D out;
  for (const auto& c : mixture.components()) {
    out.weights.push_back(c.weight);
    out.means.push_back(c.mean[0]);
    out.variances.push_back(c.covariance(0, 0));
  }
  return out;
}

double scalar_log_term(const Scalar1D& mix, std::size_t i, double v) {
  const double r = v - mix.means[i];
  return std::log(mix.weights[i]) - 0.5 * std::log(2.0 * std::numbers::pi * mix.variances[i]) -
         0.5 * r * r / mix.variances[i];
}

double scalar_log_pdf(const Scalar1D& mix, double v) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mix.weights.size(); ++i)
    if (mix.weights[i] > 0.0) peak = std::max(peak, scalar_log_term(mix, i, v));
  double acc = 0.0;
  for (std::size_t i = 0; i < mix.weights.size(); ++i)
    if (mix.weights[i] > 0.0) acc += std::exp(scalar_log_term(mix, i, v) - peak);
  return peak + std::log(acc);
}

struct Span {
  double lo, hi;
};

Span support_span(const Scalar1D& mix, double sigmas) {
  Span s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < mix.weights.size(); ++i) {
    if (mix.weights[i] <= 0.0) continue;
    const double sd = std::sqrt(mix.variances[i]);
    s.lo = std::min(s.lo, mix.means[i] - sigmas * sd);
    s.hi = std::max(s.hi, mix.means[i] + sigmas * sd);
  }
  return s;
}

void require_scalar(const BayesianLinearModel& model) {
  if (model.state_dim() != 1 || model.observation_dim() != 1)
    throw ValidationError("quadrature oracle requires a scalar model (d = m = 1)");
}

// Posterior on a fixed x grid with precomputed log prior values.
class ScalarPosterior {
 public:
  // The grid covers the prior span and, for every y in [y_lo, y_hi], the
  // span where the likelihood f_n(y - H x) is non-negligible.
  ScalarPosterior(const BayesianLinearModel& model, const QuadratureSpec& spec, double y_lo,
                  double y_hi)
      : h_(model.H()(0, 0)), noise_(scalar_parts(model.noise())) {
    const Scalar1D prior = scalar_parts(model.x_prior());
    Span span = support_span(prior, spec.span_sigmas);
    const Span noise_span = support_span(noise_, spec.span_sigmas);
    if (h_ != 0.0)
      for (double y : {y_lo, y_hi})
        for (double v : {noise_span.lo, noise_span.hi}) {
          const double x = (y - v) / h_;
          span.lo = std::min(span.lo, x);
          span.hi = std::max(span.hi, x);
        }
    const std::size_t n = spec.grid_points;
    step_ = (span.hi - span.lo) / static_cast<double>(n - 1);
    xs_.resize(n);
    log_prior_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs_[i] = span.lo + step_ * static_cast<double>(i);
      log_prior_[i] = scalar_log_pdf(prior, xs_[i]);
    }
    work_.resize(n);
  }

  QuadPosterior at(double y) {
    const std::size_t n = xs_.size();
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      work_[i] = log_prior_[i] + scalar_log_pdf(noise_, y - h_ * xs_[i]);
      peak = std::max(peak, work_[i]);
    }
    double z = 0.0, first = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = std::exp(work_[i] - peak) * (i == 0 || i + 1 == n ? 0.5 : 1.0);
      work_[i] = w;
      z += w;
      first += w * xs_[i];
    }
    const double mean = first / z;
    double second = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = xs_[i] - mean;
      second += work_[i] * c * c;
    }
    return {peak + std::log(z * step_), mean, second / z};
  }

 private:
  double h_;
  Scalar1D noise_;
  double step_ = 0.0;
  std::vector<double> xs_, log_prior_, work_;
};

}  // namespace

void check_quadrature_spec(const QuadratureSpec& spec) {
  if (spec.grid_points < 1001 || spec.grid_points % 2 == 0)
    throw ValidationError("quadrature grid_points must be odd and at least 1001");
  if (!(spec.span_sigmas >= 8.0)) throw ValidationError("quadrature span_sigmas must be >= 8");
}

QuadPosterior quad_posterior(const BayesianLinearModel& model, double y,
                             const QuadratureSpec& spec) {
  require_scalar(model);
  check_quadrature_spec(spec);
  return ScalarPosterior(model, spec, y, y).at(y);
}

double quad_posterior_mean(const BayesianLinearModel& model, double y,
                           const QuadratureSpec& spec) {
  const QuadPosterior post = quad_posterior(model, y, spec);
  if (!(post.log_evidence >= std::log(1e-300)))
    throw NumericalError("y outside numerical support");
  return post.mean;
}

double quad_mse(const BayesianLinearModel& model, const QuadratureSpec& spec) {
  require_scalar(model);
  check_quadrature_spec(spec);
  // Outer grid spans the observation distribution, built from scalar moments
  // of H x + n per component pair.
  const Scalar1D prior = scalar_parts(model.x_prior());
  const Scalar1D noise = scalar_parts(model.noise());
  const double h = model.H()(0, 0);
  Scalar1D obs;
  for (std::size_t k = 0; k < prior.weights.size(); ++k)
    for (std::size_t l = 0; l < noise.weights.size(); ++l) {
      obs.weights.push_back(prior.weights[k] * noise.weights[l]);
      obs.means.push_back(h * prior.means[k] + noise.means[l]);
      obs.variances.push_back(h * h * prior.variances[k] + noise.variances[l]);
    }
  const Span span = support_span(obs, spec.span_sigmas);
  const std::size_t n = spec.grid_points;
  const double step = (span.hi - span.lo) / static_cast<double>(n - 1);
  ScalarPosterior inner(model, spec, span.lo, span.hi);

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double y = span.lo + step * static_cast<double>(j);
    const QuadPosterior post = inner.at(y);
    const double edge = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    total += edge * std::exp(post.log_evidence) * post.variance;
  }
  return total * step;
}

OracleReport check_against_oracle(const BayesianLinearModel& model,
                                  const std::function<double(double)>& estimator,
                                  const QuadratureSpec& mean_spec, const QuadratureSpec& mse_spec,
                                  std::size_t y_points) {
  require_scalar(model);
  check_quadrature_spec(mean_spec);
  OracleReport report;

  const GaussianMixture obs = observation_mixture(model);
  const double centre = mixture_mean(obs)[0];
  const double spread = 6.0 * std::sqrt(mixture_covariance(obs)(0, 0));
  ScalarPosterior quad(model, mean_spec, centre - spread, centre + spread);
  for (std::size_t i = 0; i < y_points; ++i) {
    const double frac =
        y_points > 1 ? static_cast<double>(i) / static_cast<double>(y_points - 1) : 0.5;
    const double y = centre - spread + 2.0 * spread * frac;
    const QuadPosterior post = quad.at(y);
    if (!(post.log_evidence >= std::log(1e-300)))
      throw NumericalError("y outside numerical support");
    report.max_deviation = std::max(report.max_deviation, std::abs(estimator(y) - post.mean));
  }

  const PrecomputedEstimator pre(model);
  report.lower = genie_lower_bound(pre);
  report.upper = lmmse_upper_bound(model);
  report.quad_mse = quad_mse(model, mse_spec);
  report.mse_within_bounds = report.quad_mse >= report.lower - kOracleBoundSlack &&
                             report.quad_mse <= report.upper + kOracleBoundSlack;
  report.passed = report.max_deviation <= kOracleTolerance && report.mse_within_bounds;
  return report;
}

OracleReport check_against_oracle(const BayesianLinearModel& model,
                                  const QuadratureSpec& mean_spec, const QuadratureSpec& mse_spec,
                                  std::size_t y_points) {
  const PrecomputedEstimator pre(model);
  auto estimator = [&pre](double y) { return mmse_estimate(pre, Vector::Constant(1, y))[0]; };
  return check_against_oracle(model, estimator, mean_spec, mse_spec, y_points);
}

}  // namespace gmmse
