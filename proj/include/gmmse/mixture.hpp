#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gmmse/errors.hpp"
#include "gmmse/rng.hpp"

namespace gmmse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-12;

struct GaussianComponent {
  double weight = 1.0;
  Vector mean;
  Matrix covariance;
};

/// Checks the mixture invariants on raw components: nonempty, common
/// dimension, finite entries, nonnegative weights summing to one within
/// kWeightSumTolerance, symmetric positive definite covariances.
/// Returns the first violation (naming the component index), or nullopt.
std::optional<std::string> validate(std::span<const GaussianComponent> components);

/// log N(point; mean, L L^T) given the lower Cholesky factor L and
/// log det(L L^T).
double gaussian_log_density(const Vector& point, const Vector& mean,
                            const Eigen::LLT<Matrix>& factor, double log_det);

/// Finite Gaussian mixture with immutable, validated components.
///
/// Weights are renormalized to sum exactly to one at construction.
/// Zero-weight components are kept (they take part in every formula) but are
/// never sampled. Each component's Cholesky factor is computed once and
/// reused for densities and sampling.
class GaussianMixture {
 public:
  /// Throws ValidationError with the message from validate().
  explicit GaussianMixture(std::vector<GaussianComponent> components);

  /// Single Gaussian with weight one.
  static GaussianMixture gaussian(Vector mean, Matrix covariance);

  std::size_t size() const { return components_.size(); }
  Eigen::Index dimension() const { return components_.front().mean.size(); }

  const GaussianComponent& component(std::size_t k) const { return components_[k]; }
  const std::vector<GaussianComponent>& components() const { return components_; }
  const Eigen::LLT<Matrix>& cholesky(std::size_t k) const { return factors_[k]; }
  double log_det(std::size_t k) const { return log_dets_[k]; }

  /// log f(point), evaluated by log-sum-exp over components.
  double log_density(const Vector& point) const;

  /// One draw: categorical component pick, then mean + L z.
  Vector draw(Rng& rng) const;

  /// `count` draws from a generator seeded with `seed`.
  std::vector<Vector> sample(std::uint64_t seed, std::size_t count) const;

 private:
  std::vector<GaussianComponent> components_;
  std::vector<Eigen::LLT<Matrix>> factors_;
  std::vector<double> log_dets_;
  std::vector<double> cumulative_;
};

/// sum_k p_k u_k
Vector mixture_mean(const GaussianMixture& mixture);

/// sum_k p_k (C_k + u_k u_k^T) - u u^T, symmetrized.
Matrix mixture_covariance(const GaussianMixture& mixture);

/// Distribution of D x + a. Components become (p_k, D u_k + a, D C_k D^T).
/// Throws ValidationError if D is rank deficient enough to make a component
/// covariance non-PD.
GaussianMixture affine_transform(const GaussianMixture& mixture, const Matrix& D,
                                 const Vector& a);

/// Distribution of [x; n] for independent x ~ first, n ~ second.
/// Component (k, l) sits at index k * second.size() + l.
GaussianMixture independent_join(const GaussianMixture& first, const GaussianMixture& second);

/// Marginal over coordinates [first, first + count).
GaussianMixture marginal(const GaussianMixture& mixture, Eigen::Index first, Eigen::Index count);

/// E exp(i t^T x) = sum_k p_k exp(i t^T u_k - t^T C_k t / 2)
std::complex<double> characteristic_function(const GaussianMixture& mixture, const Vector& t);

}  // namespace gmmse
