#pragma once

// Random model generators shared by the unit and acceptance tests. They use
// std::mt19937_64 directly so test inputs do not depend on gmmse::Rng.

#include <random>

#include "gmmse/linear_model.hpp"

namespace gmmse::testing {

class ModelFactory {
 public:
  explicit ModelFactory(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<>(lo, hi)(gen_); }

  Vector vector(Eigen::Index n, double scale = 1.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(-scale, scale);
    return v;
  }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(-scale, scale);
    return m;
  }

  /// A A^T + floor * I, comfortably positive definite.
  Matrix spd(Eigen::Index n, double floor = 0.2) {
    const Matrix a = matrix(n, n);
    Matrix s = a * a.transpose() + floor * Matrix::Identity(n, n);
    return 0.5 * (s + s.transpose());
  }

  /// Square matrix with singular values bounded away from zero.
  Matrix invertible(Eigen::Index n) {
    return matrix(n, n, 0.5) + 2.0 * Matrix::Identity(n, n);
  }

  std::vector<double> weights(std::size_t count) {
    std::vector<double> w(count);
    double total = 0.0;
    for (auto& v : w) total += (v = uniform(0.2, 1.0));
    for (auto& v : w) v /= total;
    return w;
  }

  GaussianMixture mixture(Eigen::Index dim, std::size_t count, double mean_scale = 3.0) {
    std::vector<GaussianComponent> comps;
    const auto w = weights(count);
    for (std::size_t k = 0; k < count; ++k)
      comps.push_back({w[k], vector(dim, mean_scale), spd(dim)});
    return GaussianMixture(std::move(comps));
  }

  /// Scalar mixture with variances in [var_lo, var_hi].
  GaussianMixture scalar_mixture(std::size_t count, double mean_scale, double var_lo,
                                 double var_hi) {
    std::vector<GaussianComponent> comps;
    const auto w = weights(count);
    for (std::size_t k = 0; k < count; ++k)
      comps.push_back({w[k], Vector::Constant(1, uniform(-mean_scale, mean_scale)),
                       Matrix::Constant(1, 1, uniform(var_lo, var_hi))});
    return GaussianMixture(std::move(comps));
  }

  BayesianLinearModel model(Eigen::Index d, Eigen::Index m, std::size_t kx, std::size_t ln) {
    return BayesianLinearModel(matrix(m, d), mixture(d, kx), mixture(m, ln, 1.0));
  }

  /// d = m = 1 with |K| = kx, |L| = ln.
  BayesianLinearModel scalar_model(std::size_t kx, std::size_t ln) {
    const double h = uniform(0.5, 2.0) * (integer(0, 1) ? 1.0 : -1.0);
    return BayesianLinearModel(Matrix::Constant(1, 1, h), scalar_mixture(kx, 3.0, 0.3, 2.0),
                               scalar_mixture(ln, 1.0, 0.2, 1.5));
  }

 private:
  std::mt19937_64 gen_;
};

/// The x prior and model of configs/figure1.config at noise N(0, beta I).
inline GaussianMixture figure1_prior() {
  const double means[4][5] = {{35.381, -20.184, -6.377, 24.419, 38.891},
                              {-47.087, 0.286, -68.308, 4.400, 1.195},
                              {79.522, -51.577, -17.330, -7.422, 9.282126},
                              {-30.903, -5.826, 3.246, -101.586, -0.047508}};
  std::vector<GaussianComponent> comps;
  for (const auto& m : means)
    comps.push_back({0.25, Eigen::Map<const Vector>(m, 5), Matrix::Identity(5, 5)});
  return GaussianMixture(std::move(comps));
}

inline BayesianLinearModel figure1_model(double beta = 1.0) {
  return BayesianLinearModel(Matrix::Identity(5, 5), figure1_prior(),
                             GaussianMixture::gaussian(Vector::Zero(5),
                                                       beta * Matrix::Identity(5, 5)));
}

inline GaussianMixture scalar_gaussian(double mean, double var) {
  return GaussianMixture::gaussian(Vector::Constant(1, mean), Matrix::Constant(1, 1, var));
}

}  // namespace gmmse::testing
