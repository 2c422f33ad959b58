#include <gtest/gtest.h>

#include <cmath>

#include "gmmse/linear_model.hpp"
#include "random_models.hpp"

namespace gmmse {
namespace {

using testing::ModelFactory;
using testing::scalar_gaussian;

BayesianLinearModel scalar_unit_model() {
  return BayesianLinearModel(Matrix::Identity(1, 1), scalar_gaussian(0, 1), scalar_gaussian(0, 1));
}

TEST(LinearModel, RejectsMismatchedH) {
  ModelFactory f(1);
  EXPECT_THROW(BayesianLinearModel(Matrix::Identity(3, 2), f.mixture(3, 1), f.mixture(3, 1)),
               ValidationError);
}

TEST(ObservationMixture, SumOfGaussians) {
  const auto y = observation_mixture(scalar_unit_model());
  ASSERT_EQ(y.size(), 1u);
  EXPECT_DOUBLE_EQ(y.component(0).mean[0], 0.0);
  EXPECT_DOUBLE_EQ(y.component(0).covariance(0, 0), 2.0);
}

TEST(ObservationMixture, FigureSetupHasFourComponents) {
  EXPECT_EQ(observation_mixture(testing::figure1_model()).size(), 4u);
}

TEST(ObservationMixture, MeanIsLinear) {
  ModelFactory f(2);
  for (int t = 0; t < 20; ++t) {
    const auto model = f.model(f.integer(1, 5), f.integer(1, 5), 3, 2);
    const Vector lhs = mixture_mean(observation_mixture(model));
    const Vector rhs = model.H() * mixture_mean(model.x_prior()) + mixture_mean(model.noise());
    ASSERT_TRUE(lhs.isApprox(rhs, 1e-12) || (lhs - rhs).norm() < 1e-12);
  }
}

TEST(ObservationMixture, NumericallySingularComponentIsHardError) {
  // H H^T = 1e20 * ones(2, 2) swamps the 1e-10 noise variance in double
  // precision, so the computed C_yy is exactly singular.
  Matrix H(2, 1);
  H << 1e10, 1e10;
  const BayesianLinearModel model(H, scalar_gaussian(0, 1),
                                  GaussianMixture::gaussian(Vector::Zero(2), 1e-10 * Matrix::Identity(2, 2)));
  try {
    observation_mixture(model);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("k=0, l=0"), std::string::npos) << e.what();
  }
}

TEST(JointMixture, MarginalsRecoverObservationAndPrior) {
  ModelFactory f(4);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index d = f.integer(1, 4), m = f.integer(1, 4);
    const auto model = f.model(d, m, static_cast<std::size_t>(f.integer(1, 3)),
                               static_cast<std::size_t>(f.integer(1, 3)));
    const auto joint = joint_xy_mixture(model);
    const auto y_direct = observation_mixture(model);
    const auto y_block = marginal(joint, 0, m);
    const auto x_block = marginal(joint, m, d);
    ASSERT_EQ(y_block.size(), y_direct.size());
    for (std::size_t i = 0; i < y_direct.size(); ++i) {
      ASSERT_NEAR(y_block.component(i).weight, y_direct.component(i).weight, 1e-12);
      ASSERT_LE((y_block.component(i).mean - y_direct.component(i).mean).cwiseAbs().maxCoeff(), 1e-12);
      ASSERT_LE((y_block.component(i).covariance - y_direct.component(i).covariance).cwiseAbs().maxCoeff(),
                1e-12);
      const std::size_t k = i / model.noise().size();
      ASSERT_LE((x_block.component(i).mean - model.x_prior().component(k).mean).cwiseAbs().maxCoeff(), 1e-12);
      ASSERT_LE((x_block.component(i).covariance - model.x_prior().component(k).covariance)
                    .cwiseAbs().maxCoeff(),
                1e-12);
    }
  }
}

TEST(JointMixture, ScalarUnitCovariance) {
  const auto joint = joint_xy_mixture(scalar_unit_model());
  Matrix expected(2, 2);
  expected << 2, 1, 1, 1;
  EXPECT_TRUE(joint.component(0).covariance.isApprox(expected, 1e-15));
}

TEST(ObservationMixture, AgreesWithPushedForwardSamples) {
  ModelFactory f(5);
  const auto model = f.model(3, 2, 3, 2);
  const auto y_mix = observation_mixture(model);
  const Vector mean = mixture_mean(y_mix);
  const Matrix cov = mixture_covariance(y_mix);
  const std::size_t n = 100000;
  const auto xs = model.x_prior().sample(1, n);
  const auto ns = model.noise().sample(2, n);
  std::vector<Vector> ys;
  ys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ys.push_back(model.H() * xs[i] + ns[i]);
  Vector s = Vector::Zero(2);
  for (const auto& y : ys) s += y;
  const Vector sm = s / static_cast<double>(n);
  for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(sm[i], mean[i], 5 * std::sqrt(cov(i, i) / n));
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      double p = 0, p2 = 0;
      for (const auto& y : ys) {
        const double prod = (y[i] - mean[i]) * (y[j] - mean[j]);
        p += prod;
        p2 += prod * prod;
      }
      const double pm = p / n;
      EXPECT_NEAR(pm, cov(i, j), 5 * std::sqrt((p2 / n - pm * pm) / n));
    }
}

TEST(Snr, Examples) {
  const auto iid = BayesianLinearModel(Matrix::Identity(5, 5),
                                       GaussianMixture::gaussian(Vector::Zero(5), Matrix::Identity(5, 5)),
                                       GaussianMixture::gaussian(Vector::Zero(5), Matrix::Identity(5, 5)));
  EXPECT_DOUBLE_EQ(snr(iid), 1.0);
  EXPECT_NEAR(snr(scale_noise(iid, 3.0)), 1.0 / 9.0, 1e-15);

  const double beta = 0.37;
  const auto b = BayesianLinearModel(Matrix::Identity(5, 5),
                                     GaussianMixture::gaussian(Vector::Zero(5), Matrix::Identity(5, 5)),
                                     GaussianMixture::gaussian(Vector::Zero(5), beta * Matrix::Identity(5, 5)));
  EXPECT_NEAR(snr(b), 1.0 / beta, 1e-14);
}

TEST(Snr, IncludesSquaredMeans) {
  // E||x||^2 = Tr C + ||u||^2 = 1 + 9
  const auto model = BayesianLinearModel(Matrix::Identity(1, 1), scalar_gaussian(3, 1),
                                         scalar_gaussian(0, 2));
  EXPECT_NEAR(snr(model), 5.0, 1e-15);
}

TEST(Calibrate, UnitCaseNeedsNoScaling) {
  const auto iid = BayesianLinearModel(Matrix::Identity(5, 5),
                                       GaussianMixture::gaussian(Vector::Zero(5), Matrix::Identity(5, 5)),
                                       GaussianMixture::gaussian(Vector::Zero(5), Matrix::Identity(5, 5)));
  EXPECT_NEAR(calibrate_noise_scale(iid, 0.0).noise_scale, 1.0, 1e-15);
  const double a0 = calibrate_noise_scale(iid, 0.0).noise_scale;
  const double a20 = calibrate_noise_scale(iid, 20.0).noise_scale;
  EXPECT_NEAR(a0 / a20, 10.0, 1e-12);
}

TEST(Calibrate, HitsTargetSnr) {
  ModelFactory f(6);
  for (int t = 0; t < 10; ++t) {
    const auto model = f.model(f.integer(1, 5), f.integer(1, 5), 3, 2);
    for (double s : {-10.0, 0.0, 17.0, 50.0}) {
      const auto c = calibrate_noise_scale(model, s);
      EXPECT_NEAR(snr(c.model) / from_db(s), 1.0, 1e-9);
      EXPECT_GT(c.noise_scale, 0.0);
    }
  }
}

TEST(Calibrate, NonzeroMeanNoiseScalesMeans) {
  const auto model = BayesianLinearModel(Matrix::Identity(1, 1), scalar_gaussian(0, 1),
                                         scalar_gaussian(2, 1));
  const auto c = calibrate_noise_scale(model, 10.0);
  EXPECT_NEAR(c.model.noise().component(0).mean[0], 2.0 * c.noise_scale, 1e-15);
  EXPECT_NEAR(c.model.noise().component(0).covariance(0, 0), c.noise_scale * c.noise_scale, 1e-15);
}

TEST(Calibrate, FigureGridHas61Points) {
  const auto model = testing::figure1_model();
  int count = 0;
  for (int s = -10; s <= 50; ++s) {
    const auto c = calibrate_noise_scale(model, s);
    EXPECT_NEAR(snr(c.model) / from_db(s), 1.0, 1e-12);
    ++count;
  }
  EXPECT_EQ(count, 61);
}

TEST(Calibrate, RejectsNonFiniteTarget) {
  EXPECT_THROW(calibrate_noise_scale(scalar_unit_model(), std::nan("")), ValidationError);
  EXPECT_THROW(calibrate_noise_scale(scalar_unit_model(), INFINITY), ValidationError);
}

}  // namespace
}  // namespace gmmse
