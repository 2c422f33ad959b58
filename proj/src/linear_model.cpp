#include "gmmse/linear_model.hpp"

#include <cmath>
#include <sstream>

namespace gmmse {

BayesianLinearModel::BayesianLinearModel(Matrix H, GaussianMixture x_prior, GaussianMixture noise)
    : H_(std::move(H)), x_prior_(std::move(x_prior)), noise_(std::move(noise)) {
  if (H_.cols() != x_prior_.dimension() || H_.rows() != noise_.dimension()) {
    std::ostringstream os;
    os << "H is " << H_.rows() << "x" << H_.cols() << " but x has dimension "
       << x_prior_.dimension() << " and noise has dimension " << noise_.dimension();
    throw ValidationError(os.str());
  }
  if (!H_.allFinite()) throw ValidationError("H has non-finite entries");
}

GaussianMixture observation_mixture(const BayesianLinearModel& model) {
  const Matrix& H = model.H();
  std::vector<GaussianComponent> out;
  out.reserve(model.x_prior().size() * model.noise().size());
  for (std::size_t k = 0; k < model.x_prior().size(); ++k) {
    const auto& xk = model.x_prior().component(k);
    for (std::size_t l = 0; l < model.noise().size(); ++l) {
      const auto& nl = model.noise().component(l);
      Matrix cov = H * xk.covariance * H.transpose() + nl.covariance;
      cov = 0.5 * (cov + cov.transpose());
      if (Eigen::LLT<Matrix>(cov).info() != Eigen::Success) {
        std::ostringstream os;
        os << "observation covariance (k=" << k << ", l=" << l << ") is not positive definite";
        throw NumericalError(os.str());
      }
      out.push_back({xk.weight * nl.weight, H * xk.mean + nl.mean, std::move(cov)});
    }
  }
  return GaussianMixture(std::move(out));
}

GaussianMixture joint_xy_mixture(const BayesianLinearModel& model) {
  const Eigen::Index d = model.state_dim();
  const Eigen::Index m = model.observation_dim();
  Matrix block = Matrix::Zero(m + d, d + m);
  block.topLeftCorner(m, d) = model.H();
  block.topRightCorner(m, m) = Matrix::Identity(m, m);
  block.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
  return affine_transform(independent_join(model.x_prior(), model.noise()), block,
                          Vector::Zero(m + d));
}

double second_moment(const GaussianMixture& mixture) {
  return mixture_covariance(mixture).trace() + mixture_mean(mixture).squaredNorm();
}

double snr(const BayesianLinearModel& model) {
  const double noise_power = second_moment(model.noise());
  if (!(noise_power > 0.0)) throw ValidationError("snr: noise has zero second moment");
  return second_moment(model.x_prior()) / noise_power;
}

BayesianLinearModel scale_noise(const BayesianLinearModel& model, double a) {
  const Eigen::Index m = model.observation_dim();
  return BayesianLinearModel(model.H(), model.x_prior(),
                             affine_transform(model.noise(), a * Matrix::Identity(m, m),
                                              Vector::Zero(m)));
}

CalibratedModel calibrate_noise_scale(const BayesianLinearModel& model, double target_snr_db) {
  if (!std::isfinite(target_snr_db))
    throw ValidationError("calibrate_noise_scale: target SNR must be finite");
  const double current = snr(model);
  const double a = std::sqrt(current / from_db(target_snr_db));
  if (!(a > 0.0) || !std::isfinite(a))
    throw NumericalError("calibrate_noise_scale: noise scale out of floating-point range");
  return {scale_noise(model, a), a};
}

}  // namespace gmmse
