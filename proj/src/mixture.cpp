#include "gmmse/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gmmse {
namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

std::string component_issue(std::size_t k, const std::string& what) {
  std::ostringstream os;
  os << "component " << k << ": " << what;
  return os.str();
}

}  // namespace

std::optional<std::string> validate(std::span<const GaussianComponent> components) {
  if (components.empty()) return std::string("mixture has no components");

  const Eigen::Index dim = components.front().mean.size();
  if (dim < 1) return component_issue(0, "mean has dimension 0");

  double weight_sum = 0.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& c = components[k];
    if (c.mean.size() != dim || c.covariance.rows() != dim || c.covariance.cols() != dim) {
      std::ostringstream os;
      os << "dimension mismatch (expected " << dim << ", mean " << c.mean.size()
         << ", covariance " << c.covariance.rows() << "x" << c.covariance.cols() << ")";
      return component_issue(k, os.str());
    }
    if (!std::isfinite(c.weight) || !all_finite(c.mean) || !all_finite(c.covariance))
      return component_issue(k, "non-finite entry");
    if (c.weight < 0.0) {
      std::ostringstream os;
      os << "negative weight " << c.weight;
      return component_issue(k, os.str());
    }
    const double scale = c.covariance.cwiseAbs().maxCoeff();
    const double asym = (c.covariance - c.covariance.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance * scale) {
      std::ostringstream os;
      os << "covariance not symmetric (max asymmetry " << asym << ")";
      return component_issue(k, os.str());
    }
    Eigen::LLT<Matrix> llt(c.covariance);
    if (llt.info() != Eigen::Success) return component_issue(k, "covariance not positive definite");
    weight_sum += c.weight;
  }
  if (std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os << "weights sum " << weight_sum;
    return os.str();
  }
  return std::nullopt;
}

double gaussian_log_density(const Vector& point, const Vector& mean,
                            const Eigen::LLT<Matrix>& factor, double log_det) {
  const Vector whitened = factor.matrixL().solve(point - mean);
  const double d = static_cast<double>(point.size());
  return -0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det + whitened.squaredNorm());
}

GaussianMixture::GaussianMixture(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (auto issue = validate(components_)) throw ValidationError(*issue);

  double total = 0.0;
  for (const auto& c : components_) total += c.weight;
  double running = 0.0;
  factors_.reserve(components_.size());
  for (auto& c : components_) {
    c.weight /= total;
    running += c.weight;
    cumulative_.push_back(running);
    factors_.emplace_back(c.covariance);
    const Matrix& l = factors_.back().matrixLLT();
    log_dets_.push_back(2.0 * l.diagonal().array().log().sum());
  }
}

GaussianMixture GaussianMixture::gaussian(Vector mean, Matrix covariance) {
  return GaussianMixture({GaussianComponent{1.0, std::move(mean), std::move(covariance)}});
}

double GaussianMixture::log_density(const Vector& point) const {
  if (point.size() != dimension())
    throw ValidationError("log_density: point dimension does not match mixture");
  std::vector<double> terms;
  terms.reserve(size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < size(); ++k) {
    if (components_[k].weight <= 0.0) continue;
    const double t = std::log(components_[k].weight) +
                     gaussian_log_density(point, components_[k].mean, factors_[k], log_dets_[k]);
    terms.push_back(t);
    peak = std::max(peak, t);
  }
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

Vector GaussianMixture::draw(Rng& rng) const {
  const double u = rng.uniform();
  std::size_t k = size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (u < cumulative_[i]) {
      k = i;
      break;
    }
  }
  // Round-off can leave u above the last cumulative value.
  if (k == size()) {
    k = size() - 1;
    while (components_[k].weight <= 0.0) --k;
  }

  Vector z(dimension());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return components_[k].mean + factors_[k].matrixL() * z;
}

std::vector<Vector> GaussianMixture::sample(std::uint64_t seed, std::size_t count) const {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
  return out;
}

Vector mixture_mean(const GaussianMixture& mixture) {
  Vector mean = Vector::Zero(mixture.dimension());
  for (const auto& c : mixture.components()) mean += c.weight * c.mean;
  return mean;
}

Matrix mixture_covariance(const GaussianMixture& mixture) {
  const Vector mean = mixture_mean(mixture);
  Matrix cov = Matrix::Zero(mixture.dimension(), mixture.dimension());
  for (const auto& c : mixture.components()) {
    const Vector centered = c.mean - mean;
    cov += c.weight * (c.covariance + centered * centered.transpose());
  }
  return 0.5 * (cov + cov.transpose());
}

GaussianMixture affine_transform(const GaussianMixture& mixture, const Matrix& D,
                                 const Vector& a) {
  if (D.cols() != mixture.dimension() || D.rows() != a.size())
    throw ValidationError("affine_transform: D must be m x d and a must have m entries");
  std::vector<GaussianComponent> out;
  out.reserve(mixture.size());
  for (const auto& c : mixture.components()) {
    Matrix cov = D * c.covariance * D.transpose();
    cov = 0.5 * (cov + cov.transpose());
    out.push_back({c.weight, D * c.mean + a, std::move(cov)});
  }
  return GaussianMixture(std::move(out));
}

GaussianMixture independent_join(const GaussianMixture& first, const GaussianMixture& second) {
  const Eigen::Index d1 = first.dimension();
  const Eigen::Index d2 = second.dimension();
  std::vector<GaussianComponent> out;
  out.reserve(first.size() * second.size());
  for (const auto& ck : first.components()) {
    for (const auto& cl : second.components()) {
      GaussianComponent joint;
      joint.weight = ck.weight * cl.weight;
      joint.mean.resize(d1 + d2);
      joint.mean << ck.mean, cl.mean;
      joint.covariance = Matrix::Zero(d1 + d2, d1 + d2);
      joint.covariance.topLeftCorner(d1, d1) = ck.covariance;
      joint.covariance.bottomRightCorner(d2, d2) = cl.covariance;
      out.push_back(std::move(joint));
    }
  }
  return GaussianMixture(std::move(out));
}

GaussianMixture marginal(const GaussianMixture& mixture, Eigen::Index first, Eigen::Index count) {
  if (first < 0 || count < 1 || first + count > mixture.dimension())
    throw ValidationError("marginal: index range outside mixture dimension");
  std::vector<GaussianComponent> out;
  out.reserve(mixture.size());
  for (const auto& c : mixture.components()) {
    out.push_back({c.weight, c.mean.segment(first, count),
                   c.covariance.block(first, first, count, count)});
  }
  return GaussianMixture(std::move(out));
}

std::complex<double> characteristic_function(const GaussianMixture& mixture, const Vector& t) {
  if (t.size() != mixture.dimension())
    throw ValidationError("characteristic_function: t dimension does not match mixture");
  std::complex<double> acc{0.0, 0.0};
  for (const auto& c : mixture.components()) {
    const double phase = t.dot(c.mean);
    const double decay = -0.5 * t.dot(c.covariance * t);
    acc += c.weight * std::exp(std::complex<double>(decay, phase));
  }
  return acc;
}

}  // namespace gmmse
